#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gff {

// ---------------------------------------------------------------------------
// Error types
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateMetric : Error { using Error::Error; };
struct SlotOutOfRange : Error { using Error::Error; };
struct DegenerateSpan : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct StructureMismatch : Error { using Error::Error; };
struct DegeneratePlane : Error { using Error::Error; };
struct NotInImagePhi : Error { using Error::Error; };
struct LightlikeVector : Error { using Error::Error; };
struct FrameMismatch : Error { using Error::Error; };
struct SingularDesign : Error { using Error::Error; };
struct GateFailure : Error { using Error::Error; };
struct UnknownExample : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

// ---------------------------------------------------------------------------
// Deterministic RNG
// ---------------------------------------------------------------------------

inline constexpr std::uint64_t kDefaultSeed = 42;

// mt19937_64 raw output mapped to doubles by hand; std::uniform_real_distribution
// is implementation-defined and would break byte-identical reports.
class SeededRng {
  public:
    explicit SeededRng(std::uint64_t seed = kDefaultSeed);

    std::uint64_t next_u64();
    // uniform in [0,1)
    double unit();
    // uniform in [lo,hi)
    double range(double lo, double hi);
    // uniform integer in [0,n)
    int pick(int n);
    // dim components, each uniform in [-1,1)
    std::vector<double> vector(int dim);

  private:
    std::uint64_t state_[312];
    int index_;
    void refill();
};

// ---------------------------------------------------------------------------
// Dense row-major matrix helpers (square, desk-scale dims)
// ---------------------------------------------------------------------------

std::vector<double> mat_identity(int n);
std::vector<double> mat_mul(std::span<const double> a, std::span<const double> b, int n);
std::vector<double> mat_vec(std::span<const double> a, std::span<const double> x, int n);
std::vector<double> mat_transpose(std::span<const double> a, int n);

double max_abs(std::span<const double> a);
// max |a_ij - a_ji|
double symmetry_residual(std::span<const double> a, int n);

double dot(std::span<const double> x, std::span<const double> y);
// bilinear form value xᵀ g y
double form_value(std::span<const double> g, std::span<const double> x,
                  std::span<const double> y, int n);

// ---------------------------------------------------------------------------
// Symmetric eigenproblem (cyclic Jacobi) and derived queries
// ---------------------------------------------------------------------------

struct EigenSym {
    std::vector<double> values;   // ascending
    std::vector<double> vectors;  // row-major, column j = eigenvector of values[j]
};

EigenSym jacobi_eigensym(std::span<const double> a, int n);

// singular values of a general square matrix, descending (via eigen of aᵀa)
std::vector<double> singular_values(std::span<const double> a, int n);

// (#positive, #negative) eigenvalue signs; throws DegenerateMetric when an
// eigenvalue is below rel_tol relative to the largest magnitude
std::pair<int, int> symmetric_signature(std::span<const double> g, int n,
                                        double rel_tol = 1e-9);

// ---------------------------------------------------------------------------
// Inverse / solve
// ---------------------------------------------------------------------------

// Gauss-Jordan with partial pivoting; throws DegenerateMetric on a pivot
// below rel_tol relative to the largest input entry.
std::vector<double> gauss_jordan_inverse(std::span<const double> a, int n,
                                         double rel_tol = 1e-12);

// exp(A) by scaling-and-squaring Taylor series; used to generate isometries
std::vector<double> mat_exp(std::span<const double> a, int n);

}  // namespace gff
