#pragma once
/* Exact arithmetic in cyclotomic fields Q(zeta_m), plus the dense exact
 * linear algebra (multiply, Kronecker product, inverse, nullspace) used by
 * every other translation unit.  There is no floating point anywhere. */

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace repcat {

using Rational = mpq_class;

// An element of Q(zeta_m).  Internally a polynomial in zeta_m with rational
// coefficients, kept reduced modulo the m-th cyclotomic polynomial Phi_m, so
// equality of values is equality of coefficient vectors.  Conductor 1 is
// plain Q.  Values are immutable after construction.
class Scalar {
public:
    Scalar() : m_(1), c_(1, Rational(0)) {}
    explicit Scalar(long value, int conductor = 1);
    Scalar(const Rational& value, int conductor);

    // zeta_m^power
    static Scalar root_of_unity(int conductor, long power = 1);

    // Literal syntax: rationals `p/q`, roots `z^k` (z = zeta_m), products
    // `p/q z^k`, and +/- separated sums, e.g. "1/2 + 1/2 z^6".
    static Scalar parse(const std::string& text, int conductor);

    int conductor() const { return m_; }
    const std::vector<Rational>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_rational() const;
    // Requires is_rational().
    Rational rational_value() const;

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator-() const;
    Scalar inverse() const;  // throws std::domain_error on 0

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }
    // Arbitrary but consistent total order, so Scalars can key containers.
    bool operator<(const Scalar& o) const;

    // Embed into Q(zeta_n) where conductor() divides n (zeta_m = zeta_n^(n/m)).
    Scalar lifted(int conductor) const;

    // Exact literal, round-trips through parse().  Never decimal.
    std::string str() const;

private:
    int m_;
    std::vector<Rational> c_;  // size = deg Phi_m; c_[k] multiplies zeta_m^k

    Scalar(int conductor, std::vector<Rational> reduced)
        : m_(conductor), c_(std::move(reduced)) {}
    static Scalar from_power_sum(int conductor, const std::vector<Rational>& raw);
    friend class ExactMatrix;
};

// Degree of Phi_m (Euler phi of m).
int cyclotomic_degree(int m);

// Dense row-major matrix over Q(zeta_m).  A 0x0 matrix is permitted and acts
// as the identity in degenerate compositions.
class ExactMatrix {
public:
    ExactMatrix() : rows_(0), cols_(0), m_(1) {}
    ExactMatrix(int rows, int cols, int conductor);
    static ExactMatrix identity(int n, int conductor);
    static ExactMatrix from_rows(const std::vector<std::vector<Scalar>>& rows,
                                 int conductor);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int conductor() const { return m_; }

    const Scalar& at(int i, int j) const;
    void set(int i, int j, const Scalar& v);

    ExactMatrix operator*(const ExactMatrix& o) const;
    ExactMatrix operator+(const ExactMatrix& o) const;
    ExactMatrix operator-(const ExactMatrix& o) const;
    bool operator==(const ExactMatrix& o) const;
    bool operator!=(const ExactMatrix& o) const { return !(*this == o); }

    ExactMatrix kron(const ExactMatrix& o) const;  // left factor most significant
    ExactMatrix transpose() const;
    ExactMatrix scaled(const Scalar& s) const;
    ExactMatrix lifted(int conductor) const;

    ExactMatrix inverse() const;  // throws std::domain_error if singular
    // Basis of {x : A x = 0} as n x 1 columns, ordered by the free column of
    // the reduced echelon form they correspond to (ascending).
    std::vector<ExactMatrix> nullspace_basis() const;
    int rank() const;

    bool is_zero() const;
    // If this equals alpha * I for some Scalar alpha, return alpha.
    std::optional<Scalar> scalar_multiple_of_identity() const;

    static ExactMatrix vstack(const std::vector<ExactMatrix>& blocks);
    static ExactMatrix hstack(const std::vector<ExactMatrix>& blocks);

    std::string str() const;  // rows of literals, for reports and debugging

private:
    int rows_, cols_, m_;
    std::vector<Scalar> a_;

    Scalar& mut(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    // Row-reduce in place; returns pivot column indices.
    std::vector<int> rref_in_place();
};

}  // namespace repcat
