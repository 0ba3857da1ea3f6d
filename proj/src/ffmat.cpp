#include "moq/ffmat.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace moq {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Residue mod_pow(Residue a, std::uint64_t e, Residue p) {
    std::uint64_t result = 1 % p, base = a % p;
    while (e > 0) {
        if (e & 1) result = result * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return static_cast<Residue>(result);
}

Residue mod_inv(Residue a, Residue p) {
    if (a % p == 0) throw InvalidArgument("division by zero in F_" + std::to_string(p));
    return mod_pow(a, p - 2, p);
}

// ---------------------------------------------------------------------------
// FpScalar

FpScalar::FpScalar(long long v, Residue p) : value_(mod_reduce(v, p)), modulus_(p) {}

void FpScalar::check(FpScalar o) const {
    detail::require_same(modulus_ == o.modulus_, "FpScalar modulus mismatch");
}

FpScalar FpScalar::operator+(FpScalar o) const {
    check(o);
    return {mod_add(value_, o.value_, modulus_), modulus_};
}

FpScalar FpScalar::operator-(FpScalar o) const {
    check(o);
    return {mod_sub(value_, o.value_, modulus_), modulus_};
}

FpScalar FpScalar::operator*(FpScalar o) const {
    check(o);
    return {mod_mul(value_, o.value_, modulus_), modulus_};
}

FpScalar FpScalar::operator/(FpScalar o) const {
    check(o);
    return *this * o.inverse();
}

FpScalar FpScalar::operator-() const { return {mod_neg(value_, modulus_), modulus_}; }

FpScalar FpScalar::inverse() const { return {mod_inv(value_, modulus_), modulus_}; }

FpScalar FpScalar::pow(std::uint64_t e) const { return {mod_pow(value_, e, modulus_), modulus_}; }

// ---------------------------------------------------------------------------
// FpMatrix

FpMatrix::FpMatrix(std::size_t rows, std::size_t cols, Residue p)
    : rows_(rows), cols_(cols), p_(p), data_(rows * cols, 0) {}

FpMatrix FpMatrix::identity(std::size_t n, Residue p) {
    FpMatrix m(n, n, p);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1 % p;
    return m;
}

FpMatrix FpMatrix::from_rows(Residue p, std::initializer_list<std::initializer_list<long long>> rows) {
    std::size_t cols = rows.size() == 0 ? 0 : rows.begin()->size();
    FpMatrix m(rows.size(), cols, p);
    std::size_t r = 0;
    for (const auto& row : rows) {
        detail::require_same(row.size() == cols, "ragged matrix literal");
        std::size_t c = 0;
        for (long long v : row) m.set(r, c++, v);
        ++r;
    }
    return m;
}

FpMatrix FpMatrix::from_rows(Residue p, const std::vector<std::vector<Residue>>& rows, std::size_t cols) {
    FpMatrix m(rows.size(), cols, p);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        detail::require_same(rows[r].size() == cols, "ragged row list");
        for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = rows[r][c] % p;
    }
    return m;
}

FpMatrix FpMatrix::operator+(const FpMatrix& o) const {
    detail::require_same(rows_ == o.rows_ && cols_ == o.cols_ && p_ == o.p_, "matrix sum shape mismatch");
    FpMatrix r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = mod_add(data_[i], o.data_[i], p_);
    return r;
}

FpMatrix FpMatrix::operator-(const FpMatrix& o) const {
    detail::require_same(rows_ == o.rows_ && cols_ == o.cols_ && p_ == o.p_, "matrix difference shape mismatch");
    FpMatrix r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = mod_sub(data_[i], o.data_[i], p_);
    return r;
}

FpMatrix FpMatrix::operator*(const FpMatrix& o) const {
    detail::require_same(cols_ == o.rows_ && p_ == o.p_, "matrix product shape mismatch");
    FpMatrix r(rows_, o.cols_, p_);
    std::vector<std::uint64_t> acc(o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        std::fill(acc.begin(), acc.end(), 0);
        for (std::size_t k = 0; k < cols_; ++k) {
            std::uint64_t a = data_[i * cols_ + k];
            if (a == 0) continue;
            const Residue* b = o.data_.data() + k * o.cols_;
            for (std::size_t j = 0; j < o.cols_; ++j) acc[j] += a * b[j];
            if ((k & 1023) == 1023)
                for (auto& v : acc) v %= p_;
        }
        for (std::size_t j = 0; j < o.cols_; ++j) r.data_[i * o.cols_ + j] = static_cast<Residue>(acc[j] % p_);
    }
    return r;
}

FpMatrix FpMatrix::scaled(Residue s) const {
    FpMatrix r = *this;
    for (auto& v : r.data_) v = mod_mul(v, s % p_, p_);
    return r;
}

FpMatrix FpMatrix::transpose() const {
    FpMatrix r(cols_, rows_, p_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = (*this)(i, j);
    return r;
}

FpMatrix FpMatrix::pow(std::uint64_t e) const {
    detail::require_same(is_square(), "power of a non-square matrix");
    FpMatrix result = identity(rows_, p_), base = *this;
    while (e > 0) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e > 0) base = base * base;
    }
    return result;
}

std::vector<Residue> FpMatrix::apply(std::span<const Residue> v) const {
    detail::require_same(v.size() == cols_, "matrix-vector shape mismatch");
    std::vector<Residue> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        std::uint64_t acc = 0;
        for (std::size_t j = 0; j < cols_; ++j) acc += static_cast<std::uint64_t>(data_[i * cols_ + j]) * v[j];
        out[i] = static_cast<Residue>(acc % p_);
    }
    return out;
}

Residue FpMatrix::trace() const {
    detail::require_same(is_square(), "trace of a non-square matrix");
    Residue t = 0;
    for (std::size_t i = 0; i < rows_; ++i) t = mod_add(t, (*this)(i, i), p_);
    return t;
}

bool FpMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](Residue v) { return v == 0; });
}

void FpMatrix::append_rows(const FpMatrix& o) {
    if (rows_ == 0 && cols_ == 0) {
        *this = o;
        return;
    }
    detail::require_same(cols_ == o.cols_ && p_ == o.p_, "append_rows shape mismatch");
    data_.insert(data_.end(), o.data_.begin(), o.data_.end());
    rows_ += o.rows_;
}

void FpMatrix::append_row(std::span<const Residue> r) {
    detail::require_same(r.size() == cols_, "append_row width mismatch");
    data_.insert(data_.end(), r.begin(), r.end());
    ++rows_;
}

std::string FpMatrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? "; " : "");
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j);
    }
    os << "]";
    return os.str();
}

// ---------------------------------------------------------------------------
// Row reduction

namespace {

// row_a -= f * row_b, starting at column `from`.
void axpy_row(Residue* a, const Residue* b, Residue f, std::size_t from, std::size_t n, Residue p) {
    const std::uint64_t nf = p - f;
    for (std::size_t c = from; c < n; ++c) {
        if (b[c] == 0) continue;
        a[c] = static_cast<Residue>((a[c] + nf * b[c]) % p);
    }
}

}  // namespace

std::vector<std::size_t> reduce_rows_in_place(FpMatrix& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    const Residue p = m.modulus();
    std::vector<std::size_t> pivots;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t sel = rank;
        while (sel < rows && m(sel, col) == 0) ++sel;
        if (sel == rows) continue;
        if (sel != rank) {
            auto a = m.row(sel), b = m.row(rank);
            std::swap_ranges(a.begin(), a.end(), b.begin());
        }
        Residue* piv = m.row(rank).data();
        Residue inv = mod_inv(piv[col], p);
        if (inv != 1)
            for (std::size_t c = col; c < cols; ++c) piv[c] = mod_mul(piv[c], inv, p);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank) continue;
            Residue f = m(r, col);
            if (f != 0) axpy_row(m.row(r).data(), piv, f, col, cols, p);
        }
        pivots.push_back(col);
        ++rank;
    }
    if (rank < rows) {
        FpMatrix trimmed(rank, cols, p);
        for (std::size_t r = 0; r < rank; ++r) std::copy(m.row(r).begin(), m.row(r).end(), trimmed.row(r).begin());
        m = std::move(trimmed);
    }
    return pivots;
}

std::size_t rank(const FpMatrix& m) {
    FpMatrix copy = m;
    return reduce_rows_in_place(copy).size();
}

RowReduction rref(const FpMatrix& m) {
    RowReduction out;
    out.rref = m;
    out.pivots = reduce_rows_in_place(out.rref);
    out.rank = out.pivots.size();
    const std::size_t cols = m.cols();
    const Residue p = m.modulus();
    std::vector<bool> is_pivot(cols, false);
    for (auto c : out.pivots) is_pivot[c] = true;
    FpMatrix kernel(0, cols, p);
    std::vector<Residue> v(cols);
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::fill(v.begin(), v.end(), 0);
        v[f] = 1 % p;
        for (std::size_t r = 0; r < out.rank; ++r) v[out.pivots[r]] = mod_neg(out.rref(r, f), p);
        kernel.append_row(v);
    }
    out.kernel = Subspace::span(kernel);
    // Pad the echelon form back to the input shape so callers see the full matrix.
    FpMatrix padded(m.rows(), cols, p);
    for (std::size_t r = 0; r < out.rank; ++r)
        std::copy(out.rref.row(r).begin(), out.rref.row(r).end(), padded.row(r).begin());
    out.rref = std::move(padded);
    return out;
}

// ---------------------------------------------------------------------------
// Subspace

Subspace::Subspace(std::size_t ambient, Residue p, FpMatrix basis, std::vector<std::size_t> pivots)
    : ambient_(ambient), p_(p), basis_(std::move(basis)), pivots_(std::move(pivots)) {}

Subspace Subspace::zero(std::size_t ambient, Residue p) { return {ambient, p, FpMatrix(0, ambient, p), {}}; }

Subspace Subspace::full(std::size_t ambient, Residue p) {
    std::vector<std::size_t> piv(ambient);
    for (std::size_t i = 0; i < ambient; ++i) piv[i] = i;
    return {ambient, p, FpMatrix::identity(ambient, p), std::move(piv)};
}

Subspace Subspace::span(const FpMatrix& generators) {
    FpMatrix b = generators;
    auto piv = reduce_rows_in_place(b);
    return {generators.cols(), generators.modulus(), std::move(b), std::move(piv)};
}

Subspace Subspace::span(std::size_t ambient, Residue p, const std::vector<std::vector<Residue>>& vectors) {
    return span(FpMatrix::from_rows(p, vectors, ambient));
}

Subspace Subspace::coordinate(std::size_t ambient, Residue p, std::span<const std::size_t> coords) {
    FpMatrix g(coords.size(), ambient, p);
    for (std::size_t i = 0; i < coords.size(); ++i) {
        detail::require(coords[i] < ambient, "coordinate index out of range");
        g.at(i, coords[i]) = 1 % p;
    }
    return span(g);
}

void Subspace::check_compatible(const Subspace& o) const {
    detail::require_same(ambient_ == o.ambient_, "subspace ambient dimension mismatch");
    detail::require_same(p_ == o.p_, "subspace modulus mismatch");
}

std::vector<Residue> Subspace::reduce(std::span<const Residue> v) const {
    detail::require_same(v.size() == ambient_, "vector length does not match ambient dimension");
    std::vector<Residue> w(v.begin(), v.end());
    for (std::size_t r = 0; r < pivots_.size(); ++r) {
        Residue f = w[pivots_[r]];
        if (f != 0) axpy_row(w.data(), basis_.row(r).data(), f, 0, ambient_, p_);
    }
    return w;
}

bool Subspace::contains(std::span<const Residue> v) const {
    auto w = reduce(v);
    return std::all_of(w.begin(), w.end(), [](Residue x) { return x == 0; });
}

bool Subspace::contains(const Subspace& other) const {
    check_compatible(other);
    for (std::size_t r = 0; r < other.dim(); ++r)
        if (!contains(other.basis_.row(r))) return false;
    return true;
}

Subspace Subspace::sum(const Subspace& other) const {
    check_compatible(other);
    FpMatrix g = basis_;
    if (g.rows() == 0) g = FpMatrix(0, ambient_, p_);
    g.append_rows(other.basis_.rows() ? other.basis_ : FpMatrix(0, ambient_, p_));
    return span(g);
}

Subspace Subspace::orthogonal_complement() const {
    if (dim() == 0) return full(ambient_, p_);
    return rref(basis_).kernel;
}

Subspace Subspace::intersection(const Subspace& other) const {
    check_compatible(other);
    return orthogonal_complement().sum(other.orthogonal_complement()).orthogonal_complement();
}

SubspaceLattice subspace_lattice(const Subspace& a, const Subspace& b) {
    SubspaceLattice out;
    out.sum = a.sum(b);
    out.intersection = a.intersection(b);
    out.contains = b.contains(a);
    out.equal = a == b;
    detail::ensure(out.sum.dim() + out.intersection.dim() == a.dim() + b.dim(), "Grassmann identity failed");
    return out;
}

Subspace graded_complement(const Subspace& sub, const Subspace& inside, std::span<const std::size_t> pivot_order) {
    const std::size_t n = inside.ambient_dim();
    const Residue p = inside.modulus();
    detail::require_same(sub.ambient_dim() == n && sub.modulus() == p, "graded_complement: incompatible subspaces");
    detail::require(pivot_order.size() == n, "graded_complement: pivot order must be a permutation of the coordinates");
    {
        std::vector<bool> seen(n, false);
        for (auto c : pivot_order) {
            detail::require(c < n && !seen[c], "graded_complement: pivot order must be a permutation of the coordinates");
            seen[c] = true;
        }
    }
    detail::require(inside.contains(sub), "graded_complement: sub is not contained in inside");

    auto permute = [&](std::span<const Residue> v) {
        std::vector<Residue> w(n);
        for (std::size_t t = 0; t < n; ++t) w[t] = v[pivot_order[t]];
        return w;
    };
    FpMatrix in_basis(0, n, p);
    for (std::size_t r = 0; r < inside.dim(); ++r) in_basis.append_row(permute(inside.basis().row(r)));
    auto in_piv = reduce_rows_in_place(in_basis);

    // Coordinates of sub's basis with respect to the echelon basis of inside.
    FpMatrix coords(0, in_piv.size(), p);
    for (std::size_t r = 0; r < sub.dim(); ++r) {
        auto w = permute(sub.basis().row(r));
        std::vector<Residue> c(in_piv.size());
        for (std::size_t k = 0; k < in_piv.size(); ++k) c[k] = w[in_piv[k]];
        coords.append_row(c);
    }
    auto sub_piv = reduce_rows_in_place(coords);
    std::vector<bool> taken(in_piv.size(), false);
    for (auto k : sub_piv) taken[k] = true;

    FpMatrix comp(0, n, p);
    std::vector<Residue> v(n);
    for (std::size_t k = 0; k < in_piv.size(); ++k) {
        if (taken[k]) continue;
        for (std::size_t t = 0; t < n; ++t) v[pivot_order[t]] = in_basis(k, t);
        comp.append_row(v);
    }
    Subspace c = Subspace::span(comp);
    detail::ensure(c.dim() + sub.dim() == inside.dim() && c.intersection(sub).dim() == 0,
                   "graded_complement: result is not a complement");
    return c;
}

// ---------------------------------------------------------------------------
// Polynomials

FpPoly::FpPoly(Residue p, std::vector<Residue> coeffs) : p_(p), coeffs_(std::move(coeffs)) {
    for (auto& c : coeffs_) c %= p_;
    trim();
}

FpPoly FpPoly::constant(long long c, Residue p) { return FpPoly(p, {mod_reduce(c, p)}); }

FpPoly FpPoly::monomial(std::size_t deg, long long c, Residue p) {
    std::vector<Residue> v(deg + 1, 0);
    v[deg] = mod_reduce(c, p);
    return FpPoly(p, std::move(v));
}

void FpPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

FpPoly FpPoly::operator+(const FpPoly& o) const {
    detail::require_same(p_ == o.p_, "polynomial modulus mismatch");
    std::vector<Residue> v(std::max(coeffs_.size(), o.coeffs_.size()), 0);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = mod_add(coeff(i), o.coeff(i), p_);
    return FpPoly(p_, std::move(v));
}

FpPoly FpPoly::operator-(const FpPoly& o) const {
    detail::require_same(p_ == o.p_, "polynomial modulus mismatch");
    std::vector<Residue> v(std::max(coeffs_.size(), o.coeffs_.size()), 0);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = mod_sub(coeff(i), o.coeff(i), p_);
    return FpPoly(p_, std::move(v));
}

FpPoly FpPoly::operator*(const FpPoly& o) const {
    detail::require_same(p_ == o.p_, "polynomial modulus mismatch");
    if (is_zero() || o.is_zero()) return FpPoly(p_);
    std::vector<Residue> v(coeffs_.size() + o.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
            v[i + j] = mod_add(v[i + j], mod_mul(coeffs_[i], o.coeffs_[j], p_), p_);
    return FpPoly(p_, std::move(v));
}

FpPoly FpPoly::scaled(Residue s) const {
    std::vector<Residue> v = coeffs_;
    for (auto& c : v) c = mod_mul(c, s % p_, p_);
    return FpPoly(p_, std::move(v));
}

FpPoly FpPoly::monic() const {
    if (is_zero()) return *this;
    return scaled(mod_inv(leading(), p_));
}

Residue FpPoly::evaluate(Residue x) const {
    Residue acc = 0;
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = mod_add(mod_mul(acc, x, p_), coeffs_[i], p_);
    return acc;
}

void FpPoly::divmod(const FpPoly& d, FpPoly& q, FpPoly& r) const {
    detail::require_same(p_ == d.p_, "polynomial modulus mismatch");
    if (d.is_zero()) throw InvalidArgument("polynomial division by zero");
    std::vector<Residue> rem = coeffs_;
    const std::size_t dd = d.coeffs_.size() - 1;
    const Residue inv = mod_inv(d.leading(), p_);
    std::vector<Residue> quo(rem.size() > dd ? rem.size() - dd : 0, 0);
    for (std::size_t i = rem.size(); i-- > dd;) {
        Residue c = mod_mul(rem[i], inv, p_);
        if (c == 0) continue;
        quo[i - dd] = c;
        for (std::size_t j = 0; j <= dd; ++j)
            rem[i - dd + j] = mod_sub(rem[i - dd + j], mod_mul(c, d.coeffs_[j], p_), p_);
    }
    q = FpPoly(p_, std::move(quo));
    r = FpPoly(p_, std::move(rem));
}

FpPoly FpPoly::operator%(const FpPoly& d) const {
    FpPoly q(p_), r(p_);
    divmod(d, q, r);
    return r;
}

std::string FpPoly::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        Residue c = coeffs_[i];
        if (c == 0) continue;
        if (!first) os << " + ";
        first = false;
        if (i == 0) {
            os << c;
            continue;
        }
        if (c != 1) os << c << "*";
        os << "t";
        if (i > 1) os << "^" << i;
    }
    return os.str();
}

FpPoly poly_gcd(FpPoly a, FpPoly b) {
    while (!b.is_zero()) {
        FpPoly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

FpPolyMatrix::FpPolyMatrix(std::size_t n, Residue p) : n_(n), p_(p), entries_(n * n, FpPoly(p)) {}

FpPolyMatrix FpPolyMatrix::characteristic(const FpMatrix& a) {
    detail::require_same(a.is_square(), "characteristic matrix of a non-square matrix");
    const Residue p = a.modulus();
    FpPolyMatrix m(a.rows(), p);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            std::vector<Residue> c{mod_neg(a(i, j), p)};
            if (i == j) c.push_back(1 % p);
            m.at(i, j) = FpPoly(p, std::move(c));
        }
    return m;
}

std::vector<FpPoly> poly_invariant_factors(FpPolyMatrix m) {
    const std::size_t n = m.size();
    const Residue p = m.modulus();
    std::vector<FpPoly> factors;
    auto swap_rows = [&](std::size_t a, std::size_t b) {
        for (std::size_t c = 0; c < n; ++c) std::swap(m.at(a, c), m.at(b, c));
    };
    auto swap_cols = [&](std::size_t a, std::size_t b) {
        for (std::size_t r = 0; r < n; ++r) std::swap(m.at(r, a), m.at(r, b));
    };
    for (std::size_t k = 0; k < n; ++k) {
        for (;;) {
            // Bring a nonzero entry of minimal degree to (k, k).
            int best = -1;
            std::size_t br = k, bc = k;
            for (std::size_t r = k; r < n; ++r)
                for (std::size_t c = k; c < n; ++c) {
                    const auto& e = m(r, c);
                    if (!e.is_zero() && (best < 0 || e.degree() < best)) {
                        best = e.degree();
                        br = r;
                        bc = c;
                    }
                }
            if (best < 0) break;
            swap_rows(k, br);
            swap_cols(k, bc);
            const FpPoly pivot = m(k, k);
            bool dirty = false;
            for (std::size_t r = k + 1; r < n; ++r) {
                if (m(r, k).is_zero()) continue;
                FpPoly q(p), rem(p);
                m(r, k).divmod(pivot, q, rem);
                for (std::size_t c = k; c < n; ++c) m.at(r, c) = m(r, c) - q * m(k, c);
                dirty = dirty || !rem.is_zero();
            }
            for (std::size_t c = k + 1; c < n; ++c) {
                if (m(k, c).is_zero()) continue;
                FpPoly q(p), rem(p);
                m(k, c).divmod(pivot, q, rem);
                for (std::size_t r = k; r < n; ++r) m.at(r, c) = m(r, c) - q * m(r, k);
                dirty = dirty || !rem.is_zero();
            }
            if (dirty) continue;
            // Row and column k are clear; the pivot must divide the rest.
            bool fixed = false;
            for (std::size_t r = k + 1; r < n && !fixed; ++r)
                for (std::size_t c = k + 1; c < n && !fixed; ++c)
                    if (!(m(r, c) % pivot).is_zero()) {
                        for (std::size_t cc = k; cc < n; ++cc) m.at(k, cc) = m(k, cc) + m(r, cc);
                        fixed = true;
                    }
            if (!fixed) break;
        }
        factors.push_back(m(k, k).monic());
    }
    return factors;
}


void EchelonBasis::reduce(std::vector<Residue>& v) const {
    detail::require_same(v.size() == ambient_, "vector has the wrong length");
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        const Residue f = v[pivots_[r]];
        if (!f) continue;
        const std::uint64_t nf = p_ - f;
        const auto& row = rows_[r];
        for (std::size_t c = pivots_[r]; c < ambient_; ++c)
            if (row[c]) v[c] = static_cast<Residue>((v[c] + nf * row[c]) % p_);
    }
}

bool EchelonBasis::insert(std::vector<Residue>& v) {
    reduce(v);
    std::size_t piv = 0;
    while (piv < ambient_ && v[piv] == 0) ++piv;
    if (piv == ambient_) return false;
    const Residue inv = mod_inv(v[piv], p_);
    for (auto& x : v) x = mod_mul(x, inv, p_);
    rows_.push_back(v);
    pivots_.push_back(piv);
    return true;
}

bool EchelonBasis::contains(std::vector<Residue> v) const {
    reduce(v);
    return std::all_of(v.begin(), v.end(), [](Residue x) { return x == 0; });
}

Subspace EchelonBasis::subspace() const { return Subspace::span(ambient_, p_, rows_); }

}  // namespace moq
