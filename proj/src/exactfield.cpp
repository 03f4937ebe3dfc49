#include "repcat/exactfield.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace repcat {

namespace {

// Polynomials over Q as coefficient vectors, index = degree.
using Poly = std::vector<Rational>;

void poly_trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// Exact division by a monic divisor; remainder must come out zero.
Poly poly_div_exact(Poly num, const Poly& den) {
    Poly q(num.size() >= den.size() ? num.size() - den.size() + 1 : 0,
           Rational(0));
    while (num.size() >= den.size()) {
        Rational c = num.back() / den.back();
        size_t shift = num.size() - den.size();
        q[shift] = c;
        for (size_t i = 0; i < den.size(); ++i) num[shift + i] -= c * den[i];
        poly_trim(num);
        if (num.empty()) break;
    }
    if (!num.empty())
        throw std::logic_error("cyclotomic polynomial division left a remainder");
    return q;
}

struct CycloField {
    int m;
    Poly phi;  // monic, degree = deg
    int deg;
};

const CycloField& field(int m) {
    if (m <= 0) throw std::invalid_argument("conductor must be positive");
    static std::map<int, CycloField> cache;
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;

    // Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d, recursively.
    Poly num(m + 1, Rational(0));
    num[0] = -1;
    num[m] = 1;
    for (int d = 1; d < m; ++d)
        if (m % d == 0) num = poly_div_exact(std::move(num), field(d).phi);
    CycloField f{m, num, static_cast<int>(num.size()) - 1};
    return cache.emplace(m, std::move(f)).first->second;
}

// Remainder of p modulo the monic Phi_m.
std::vector<Rational> reduce_mod_phi(std::vector<Rational> p, const CycloField& f) {
    for (int d = static_cast<int>(p.size()) - 1; d >= f.deg; --d) {
        Rational c = p[d];
        if (c == 0) continue;
        p[d] = 0;
        for (int i = 0; i < f.deg; ++i) p[d - f.deg + i] -= c * f.phi[i];
    }
    p.resize(f.deg, Rational(0));
    for (auto& c : p) c.canonicalize();
    return p;
}

std::string rational_str(const Rational& r) { return r.get_str(); }

}  // namespace

int cyclotomic_degree(int m) { return field(m).deg; }

Scalar Scalar::from_power_sum(int conductor, const std::vector<Rational>& raw) {
    const CycloField& f = field(conductor);
    // Fold zeta^k for k >= m onto k mod m first, then reduce mod Phi_m.
    std::vector<Rational> folded(conductor, Rational(0));
    for (size_t k = 0; k < raw.size(); ++k)
        folded[k % conductor] += raw[k];
    return Scalar(conductor, reduce_mod_phi(std::move(folded), f));
}

Scalar::Scalar(long value, int conductor) : m_(conductor) {
    c_.assign(field(conductor).deg, Rational(0));
    c_[0] = value;
}

Scalar::Scalar(const Rational& value, int conductor) : m_(conductor) {
    c_.assign(field(conductor).deg, Rational(0));
    c_[0] = value;
    c_[0].canonicalize();
}

Scalar Scalar::root_of_unity(int conductor, long power) {
    long k = power % conductor;
    if (k < 0) k += conductor;
    std::vector<Rational> raw(k + 1, Rational(0));
    raw[k] = 1;
    return from_power_sum(conductor, raw);
}

bool Scalar::is_zero() const {
    return std::all_of(c_.begin(), c_.end(),
                       [](const Rational& r) { return r == 0; });
}

bool Scalar::is_rational() const {
    for (size_t k = 1; k < c_.size(); ++k)
        if (c_[k] != 0) return false;
    return true;
}

Rational Scalar::rational_value() const {
    if (!is_rational())
        throw std::domain_error("scalar " + str() + " is not rational");
    return c_[0];
}

namespace {
// Shared conductor for a binary operation: equal conductors, or one side is
// plain Q (conductor 1) and embeds silently.  Anything else is a user error.
std::pair<Scalar, Scalar> unify(const Scalar& a, const Scalar& b) {
    if (a.conductor() == b.conductor()) return {a, b};
    if (a.conductor() == 1) return {a.lifted(b.conductor()), b};
    if (b.conductor() == 1) return {a, b.lifted(a.conductor())};
    throw std::invalid_argument("conductor mismatch: " +
                                std::to_string(a.conductor()) + " vs " +
                                std::to_string(b.conductor()));
}
}  // namespace

Scalar Scalar::operator+(const Scalar& o) const {
    auto [x, y] = unify(*this, o);
    std::vector<Rational> c = x.c_;
    for (size_t k = 0; k < c.size(); ++k) {
        c[k] += y.c_[k];
        c[k].canonicalize();
    }
    return Scalar(x.m_, std::move(c));
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator-() const {
    std::vector<Rational> c = c_;
    for (auto& v : c) v = -v;
    return Scalar(m_, std::move(c));
}

Scalar Scalar::operator*(const Scalar& o) const {
    auto [x, y] = unify(*this, o);
    std::vector<Rational> raw(x.c_.size() + y.c_.size() - 1, Rational(0));
    for (size_t i = 0; i < x.c_.size(); ++i) {
        if (x.c_[i] == 0) continue;
        for (size_t j = 0; j < y.c_.size(); ++j)
            if (y.c_[j] != 0) raw[i + j] += x.c_[i] * y.c_[j];
    }
    return from_power_sum(x.m_, raw);
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero scalar");
    // Extended Euclid in Q[x] against Phi_m, which is irreducible, so the
    // gcd is a nonzero constant and old_s/gcd inverts this element.
    const CycloField& f = field(m_);
    Poly r0 = f.phi, r1 = c_;
    poly_trim(r1);
    Poly s0{Rational(0)}, s1{Rational(1)};
    while (!r1.empty()) {
        // q, rem = divmod(r0, r1)
        Poly q(r0.size() >= r1.size() ? r0.size() - r1.size() + 1 : 0,
               Rational(0));
        Poly rem = r0;
        while (rem.size() >= r1.size() && !rem.empty()) {
            Rational c = rem.back() / r1.back();
            size_t shift = rem.size() - r1.size();
            q[shift] = c;
            for (size_t i = 0; i < r1.size(); ++i) rem[shift + i] -= c * r1[i];
            poly_trim(rem);
        }
        // (r0, r1) = (r1, rem); (s0, s1) = (s1, s0 - q*s1)
        Poly qs(q.size() + s1.size() - 1, Rational(0));
        for (size_t i = 0; i < q.size(); ++i)
            if (q[i] != 0)
                for (size_t j = 0; j < s1.size(); ++j) qs[i + j] += q[i] * s1[j];
        Poly s2 = s0;
        s2.resize(std::max(s2.size(), qs.size()), Rational(0));
        for (size_t i = 0; i < qs.size(); ++i) s2[i] -= qs[i];
        poly_trim(s2);
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r0.size() != 1)
        throw std::logic_error("cyclotomic gcd was not a unit");
    Rational g = r0[0];
    for (auto& c : s0) c /= g;
    return Scalar(m_, reduce_mod_phi(std::move(s0), f));
}

bool Scalar::operator==(const Scalar& o) const {
    if (m_ != o.m_) {
        if (m_ == 1 || o.m_ == 1) {
            auto [x, y] = unify(*this, o);
            return x.c_ == y.c_;
        }
        return false;
    }
    return c_ == o.c_;
}

bool Scalar::operator<(const Scalar& o) const {
    if (m_ != o.m_) return m_ < o.m_;
    for (size_t k = 0; k < c_.size(); ++k) {
        int c = cmp(c_[k], o.c_[k]);
        if (c != 0) return c < 0;
    }
    return false;
}

Scalar Scalar::lifted(int conductor) const {
    if (conductor == m_) return *this;
    if (conductor % m_ != 0)
        throw std::invalid_argument("cannot lift conductor " +
                                    std::to_string(m_) + " into " +
                                    std::to_string(conductor));
    int stride = conductor / m_;
    std::vector<Rational> raw(static_cast<size_t>(c_.size() - 1) * stride + 1,
                              Rational(0));
    for (size_t k = 0; k < c_.size(); ++k) raw[k * stride] = c_[k];
    return from_power_sum(conductor, raw);
}

std::string Scalar::str() const {
    std::string out;
    for (size_t k = 0; k < c_.size(); ++k) {
        if (c_[k] == 0) continue;
        bool neg = c_[k] < 0;
        Rational mag = neg ? Rational(-c_[k]) : c_[k];
        std::string body;
        if (k == 0) {
            body = rational_str(mag);
        } else {
            std::string z = (k == 1) ? "z" : "z^" + std::to_string(k);
            body = (mag == 1) ? z : rational_str(mag) + " " + z;
        }
        if (out.empty())
            out = (neg ? "-" : "") + body;
        else
            out += (neg ? " - " : " + ") + body;
    }
    return out.empty() ? "0" : out;
}

Scalar Scalar::parse(const std::string& text, int conductor) {
    size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
    };
    auto fail = [&](const std::string& what) -> void {
        throw std::invalid_argument("scalar literal error at offset " +
                                    std::to_string(pos) + " in \"" + text +
                                    "\": " + what);
    };
    auto parse_int = [&]() -> mpz_class {
        skip_ws();
        size_t start = pos;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
        size_t digits = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
            ++pos;
        if (pos == digits) fail("expected an integer");
        return mpz_class(text.substr(start, pos - start));
    };

    std::map<long, Rational> raw;
    skip_ws();
    if (pos >= text.size()) throw std::invalid_argument("empty scalar literal");
    bool first = true;
    while (true) {
        skip_ws();
        int sign = 1;
        if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
            if (first && text[pos] == '+') fail("unexpected leading '+'");
            sign = (text[pos] == '-') ? -1 : 1;
            ++pos;
        } else if (!first) {
            fail("expected '+' or '-' between terms");
        }
        skip_ws();
        Rational coef(1);
        bool saw_number = false;
        if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            mpz_class p = parse_int();
            mpz_class q = 1;
            skip_ws();
            if (pos < text.size() && text[pos] == '/') {
                ++pos;
                q = parse_int();
                if (q == 0) fail("zero denominator");
            }
            coef = Rational(p, q);
            coef.canonicalize();
            saw_number = true;
        }
        long power = 0;
        bool saw_z = false;
        skip_ws();
        if (pos < text.size() && text[pos] == 'z') {
            ++pos;
            saw_z = true;
            power = 1;
            if (pos < text.size() && text[pos] == '^')
                ++pos, power = parse_int().get_si();
        }
        if (!saw_number && !saw_z) fail("expected a rational or z-term");
        long k = power % conductor;
        if (k < 0) k += conductor;
        raw[k] += sign * coef;
        first = false;
        skip_ws();
        if (pos >= text.size()) break;
        if (text[pos] != '+' && text[pos] != '-') fail("trailing junk");
    }
    std::vector<Rational> vec(conductor, Rational(0));
    for (auto& [k, c] : raw) vec[k] = c;
    return from_power_sum(conductor, vec);
}

// ---------------------------------------------------------------------------

ExactMatrix::ExactMatrix(int rows, int cols, int conductor)
    : rows_(rows), cols_(cols), m_(conductor),
      a_(static_cast<size_t>(rows) * cols, Scalar(0L, conductor)) {
    if (rows < 0 || cols < 0)
        throw std::invalid_argument("negative matrix dimension");
}

ExactMatrix ExactMatrix::identity(int n, int conductor) {
    ExactMatrix r(n, n, conductor);
    Scalar one(1L, conductor);
    for (int i = 0; i < n; ++i) r.mut(i, i) = one;
    return r;
}

ExactMatrix ExactMatrix::from_rows(const std::vector<std::vector<Scalar>>& rows,
                                   int conductor) {
    int r = static_cast<int>(rows.size());
    int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
    ExactMatrix out(r, c, conductor);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[i].size()) != c)
            throw std::invalid_argument("ragged matrix rows");
        for (int j = 0; j < c; ++j) out.mut(i, j) = rows[i][j].lifted(conductor);
    }
    return out;
}

const Scalar& ExactMatrix::at(int i, int j) const {
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
        throw std::out_of_range("matrix index (" + std::to_string(i) + "," +
                                std::to_string(j) + ") outside " +
                                std::to_string(rows_) + "x" + std::to_string(cols_));
    return a_[static_cast<size_t>(i) * cols_ + j];
}

void ExactMatrix::set(int i, int j, const Scalar& v) {
    at(i, j);  // bounds check
    mut(i, j) = v.conductor() == m_ ? v : v.lifted(m_);
}

namespace {
std::pair<ExactMatrix, ExactMatrix> unify(const ExactMatrix& a,
                                          const ExactMatrix& b) {
    if (a.conductor() == b.conductor()) return {a, b};
    if (a.conductor() == 1) return {a.lifted(b.conductor()), b};
    if (b.conductor() == 1) return {a, b.lifted(a.conductor())};
    throw std::invalid_argument("matrix conductor mismatch: " +
                                std::to_string(a.conductor()) + " vs " +
                                std::to_string(b.conductor()));
}
}  // namespace

ExactMatrix ExactMatrix::operator*(const ExactMatrix& o) const {
    auto [x, y] = unify(*this, o);
    if (x.cols_ != y.rows_)
        throw std::invalid_argument(
            "mat_mul shape mismatch: (" + std::to_string(x.rows_) + "x" +
            std::to_string(x.cols_) + ") * (" + std::to_string(y.rows_) + "x" +
            std::to_string(y.cols_) + ")");
    ExactMatrix r(x.rows_, y.cols_, x.m_);
    for (int i = 0; i < x.rows_; ++i)
        for (int k = 0; k < x.cols_; ++k) {
            const Scalar& xik = x.at(i, k);
            if (xik.is_zero()) continue;
            for (int j = 0; j < y.cols_; ++j) {
                const Scalar& ykj = y.at(k, j);
                if (ykj.is_zero()) continue;
                r.mut(i, j) = r.at(i, j) + xik * ykj;
            }
        }
    return r;
}

ExactMatrix ExactMatrix::operator+(const ExactMatrix& o) const {
    auto [x, y] = unify(*this, o);
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_)
        throw std::invalid_argument("matrix addition shape mismatch");
    ExactMatrix r = x;
    for (size_t i = 0; i < r.a_.size(); ++i) r.a_[i] = r.a_[i] + y.a_[i];
    return r;
}

ExactMatrix ExactMatrix::operator-(const ExactMatrix& o) const {
    return *this + o.scaled(Scalar(-1L, o.conductor()));
}

bool ExactMatrix::operator==(const ExactMatrix& o) const {
    if (conductor() != o.conductor()) {
        if (conductor() == 1 || o.conductor() == 1) {
            auto [x, y] = unify(*this, o);
            return x == y;
        }
        return false;
    }
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

ExactMatrix ExactMatrix::kron(const ExactMatrix& o) const {
    auto [x, y] = unify(*this, o);
    ExactMatrix r(x.rows_ * y.rows_, x.cols_ * y.cols_, x.m_);
    for (int i = 0; i < x.rows_; ++i)
        for (int j = 0; j < x.cols_; ++j) {
            if (x.at(i, j).is_zero()) continue;
            for (int p = 0; p < y.rows_; ++p)
                for (int q = 0; q < y.cols_; ++q)
                    r.mut(i * y.rows_ + p, j * y.cols_ + q) =
                        x.at(i, j) * y.at(p, q);
        }
    return r;
}

ExactMatrix ExactMatrix::transpose() const {
    ExactMatrix r(cols_, rows_, m_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.mut(j, i) = at(i, j);
    return r;
}

ExactMatrix ExactMatrix::scaled(const Scalar& s) const {
    ExactMatrix r = *this;
    for (auto& v : r.a_) v = v * s;
    r.m_ = r.a_.empty() ? m_ : r.a_[0].conductor();
    return r;
}

ExactMatrix ExactMatrix::lifted(int conductor) const {
    ExactMatrix r(rows_, cols_, conductor);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.mut(i, j) = at(i, j).lifted(conductor);
    return r;
}

ExactMatrix ExactMatrix::inverse() const {
    if (rows_ != cols_)
        throw std::invalid_argument("inverse of non-square matrix " +
                                    std::to_string(rows_) + "x" +
                                    std::to_string(cols_));
    int n = rows_;
    ExactMatrix work = *this;
    ExactMatrix inv = identity(n, m_);
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r)
            if (!work.at(r, col).is_zero()) {
                pivot = r;
                break;
            }
        if (pivot < 0) throw std::domain_error("singular matrix has no inverse");
        for (int j = 0; j < n; ++j) {
            std::swap(work.mut(pivot, j), work.mut(col, j));
            std::swap(inv.mut(pivot, j), inv.mut(col, j));
        }
        Scalar d = work.at(col, col).inverse();
        for (int j = 0; j < n; ++j) {
            work.mut(col, j) = work.at(col, j) * d;
            inv.mut(col, j) = inv.at(col, j) * d;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col || work.at(r, col).is_zero()) continue;
            Scalar f = work.at(r, col);
            for (int j = 0; j < n; ++j) {
                work.mut(r, j) = work.at(r, j) - f * work.at(col, j);
                inv.mut(r, j) = inv.at(r, j) - f * inv.at(col, j);
            }
        }
    }
    return inv;
}

std::vector<int> ExactMatrix::rref_in_place() {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < cols_ && row < rows_; ++col) {
        int pivot = -1;
        for (int r = row; r < rows_; ++r)
            if (!at(r, col).is_zero()) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        for (int j = 0; j < cols_; ++j) std::swap(mut(pivot, j), mut(row, j));
        Scalar d = at(row, col).inverse();
        for (int j = 0; j < cols_; ++j) mut(row, j) = at(row, j) * d;
        for (int r = 0; r < rows_; ++r) {
            if (r == row || at(r, col).is_zero()) continue;
            Scalar f = at(r, col);
            for (int j = 0; j < cols_; ++j) mut(r, j) = at(r, j) - f * at(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

std::vector<ExactMatrix> ExactMatrix::nullspace_basis() const {
    ExactMatrix r = *this;
    std::vector<int> pivots = r.rref_in_place();
    std::vector<bool> is_pivot(cols_, false);
    for (int p : pivots) is_pivot[p] = true;
    std::vector<ExactMatrix> basis;
    for (int f = 0; f < cols_; ++f) {
        if (is_pivot[f]) continue;
        ExactMatrix x(cols_, 1, m_);
        x.mut(f, 0) = Scalar(1L, m_);
        for (size_t k = 0; k < pivots.size(); ++k)
            x.mut(pivots[k], 0) = -r.at(static_cast<int>(k), f);
        basis.push_back(std::move(x));
    }
    return basis;
}

int ExactMatrix::rank() const {
    ExactMatrix r = *this;
    return static_cast<int>(r.rref_in_place().size());
}

bool ExactMatrix::is_zero() const {
    return std::all_of(a_.begin(), a_.end(),
                       [](const Scalar& s) { return s.is_zero(); });
}

std::optional<Scalar> ExactMatrix::scalar_multiple_of_identity() const {
    if (rows_ != cols_) return std::nullopt;
    if (rows_ == 0) return Scalar(1L, m_);
    Scalar alpha = at(0, 0);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) {
            if (i == j ? at(i, j) != alpha : !at(i, j).is_zero())
                return std::nullopt;
        }
    return alpha;
}

ExactMatrix ExactMatrix::vstack(const std::vector<ExactMatrix>& blocks) {
    if (blocks.empty()) return ExactMatrix();
    int cols = blocks[0].cols(), rows = 0, m = blocks[0].conductor();
    for (const auto& b : blocks) {
        if (b.cols() != cols)
            throw std::invalid_argument("vstack column mismatch");
        rows += b.rows();
    }
    ExactMatrix r(rows, cols, m);
    int off = 0;
    for (const auto& b : blocks) {
        for (int i = 0; i < b.rows(); ++i)
            for (int j = 0; j < cols; ++j) r.mut(off + i, j) = b.at(i, j);
        off += b.rows();
    }
    return r;
}

ExactMatrix ExactMatrix::hstack(const std::vector<ExactMatrix>& blocks) {
    if (blocks.empty()) return ExactMatrix();
    int rows = blocks[0].rows(), cols = 0, m = blocks[0].conductor();
    for (const auto& b : blocks) {
        if (b.rows() != rows) throw std::invalid_argument("hstack row mismatch");
        cols += b.cols();
    }
    ExactMatrix r(rows, cols, m);
    int off = 0;
    for (const auto& b : blocks) {
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < b.cols(); ++j) r.mut(i, off + j) = b.at(i, j);
        off += b.cols();
    }
    return r;
}

std::string ExactMatrix::str() const {
    std::ostringstream os;
    for (int i = 0; i < rows_; ++i) {
        os << "[";
        for (int j = 0; j < cols_; ++j) {
            if (j) os << ", ";
            os << at(i, j).str();
        }
        os << "]";
        if (i + 1 < rows_) os << "\n";
    }
    return os.str();
}

}  // namespace repcat
