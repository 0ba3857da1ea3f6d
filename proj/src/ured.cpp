#include "moq/ured.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <random>
#include <sstream>

namespace moq {

namespace {

using Code = URedContext::Code;
using Terms = URedContext::Terms;

void accumulate(std::unordered_map<Code, Residue>& acc, const Terms& terms, Residue scale, Residue p) {
    if (!scale) return;
    for (auto [c, v] : terms) {
        Residue& slot = acc[c];
        slot = mod_add(slot, mod_mul(v, scale, p), p);
    }
}

Terms to_terms(const std::unordered_map<Code, Residue>& acc) {
    Terms out;
    for (auto [c, v] : acc)
        if (v) out.emplace_back(c, v);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

URedContext::URedContext(std::size_t n, Residue p, LinearFunctional chi, std::vector<std::size_t> order,
                         std::array<std::size_t, 3> groups)
    : n_(n), p_(p), chi_(std::move(chi)), order_(std::move(order)), groups_(groups) {
    const std::size_t g = n * n;
    detail::require(is_prime(p), "modulus must be prime");
    detail::require_same(chi_.preimage.n() == n && chi_.preimage.modulus() == p, "chi does not live on gl_N over F_p");
    detail::require(order_.size() == g && groups_[0] + groups_[1] + groups_[2] == g, "PBW order has the wrong size");
    position_.assign(g, g);
    for (std::size_t pos = 0; pos < g; ++pos) {
        detail::require(order_[pos] < g && position_[order_[pos]] == g, "PBW order is not a permutation");
        position_[order_[pos]] = pos;
    }
    Code s = 1;
    bool saturated = false;
    for (std::size_t pos = 0; pos < g; ++pos) {
        stride_.push_back(s);
        if (s > std::numeric_limits<Code>::max() / p) saturated = true;
        else s *= p;
    }
    detail::require(!saturated || g == 0, "PBW codes do not fit in 64 bits");
    pbw_dim_ = s;
    for (std::size_t pos = 0; pos < g; ++pos) {
        const std::size_t k = order_[pos];
        chi_values_.push_back(chi_(GlElement::unit(n, k / n, k % n, p)));
        diagonal_.push_back(k / n == k % n);
    }
    brk_.resize(g * g);
    for (std::size_t a = 0; a < g; ++a)
        for (std::size_t b = 0; b < g; ++b) {
            const std::size_t ka = order_[a], kb = order_[b];
            auto br = bracket(GlElement::unit(n, ka / n, ka % n, p), GlElement::unit(n, kb / n, kb % n, p));
            for (std::size_t l = 0; l < g; ++l)
                if (br.coords()[l]) brk_[a * g + b].emplace_back(position_[l], br.coords()[l]);
        }
}

std::vector<Residue> URedContext::exponents(Code code) const {
    std::vector<Residue> a(generators());
    for (std::size_t pos = 0; pos < a.size(); ++pos) a[pos] = static_cast<Residue>(code / stride_[pos] % p_);
    return a;
}

URedContext::Code URedContext::encode(const std::vector<Residue>& a) const {
    detail::require_same(a.size() == generators(), "exponent vector has the wrong length");
    Code c = 0;
    for (std::size_t pos = 0; pos < a.size(); ++pos) {
        detail::require(a[pos] < p_, "PBW exponent out of range");
        c += a[pos] * stride_[pos];
    }
    return c;
}

std::size_t URedContext::memo_size() const {
    std::shared_lock lock(memo_mutex_);
    return memo_.size();
}

const Terms& URedContext::mul_gen_mono(std::size_t pos, Code code) const {
    const Code key = code * generators() + pos;
    {
        std::shared_lock lock(memo_mutex_);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    }
    Terms value = compute(pos, code);
    std::unique_lock lock(memo_mutex_);
    return memo_.try_emplace(key, std::move(value)).first->second;
}

Terms URedContext::compute(std::size_t k, Code code) const {
    const std::size_t g = generators();
    std::size_t j = 0;
    while (j < g && code / stride_[j] % p_ == 0) ++j;
    if (k <= j) {
        const Residue a = static_cast<Residue>(code / stride_[k] % p_);
        if (a + 1 < p_) return {{code + stride_[k], 1 % p_}};
        // x^p = x^[p] + chi(x)^p; off the diagonal x^[p] = 0, on it x^[p] = x.
        const Code rest = code - a * stride_[k];
        std::unordered_map<Code, Residue> acc;
        if (chi_values_[k]) acc[rest] = chi_values_[k];
        if (diagonal_[k]) acc[rest + stride_[k]] = mod_add(acc[rest + stride_[k]], 1 % p_, p_);
        return to_terms(acc);
    }
    // x_k x_j R = x_j (x_k R) + [x_k, x_j] R with R = code / x_j.
    const Code rest = code - stride_[j];
    std::unordered_map<Code, Residue> acc;
    for (auto [c, v] : mul_gen_mono(k, rest)) accumulate(acc, mul_gen_mono(j, c), v, p_);
    for (auto [l, v] : brk_[k * g + j]) accumulate(acc, mul_gen_mono(l, rest), v, p_);
    return to_terms(acc);
}

URedContextPtr make_ured_context(const Pyramid& py, Residue p) {
    const std::size_t n = py.size();
    std::vector<std::size_t> rminus, g0, r;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t k = i * n + j;
            if (py.col(i) > py.col(j)) rminus.push_back(k);
            else if (py.col(i) == py.col(j)) g0.push_back(k);
            else r.push_back(k);
        }
    std::vector<std::size_t> order = rminus;
    order.insert(order.end(), g0.begin(), g0.end());
    order.insert(order.end(), r.begin(), r.end());
    return std::make_shared<URedContext>(n, p, kappa(nilpotent_from_pyramid(py, p)), std::move(order),
                                         std::array<std::size_t, 3>{rminus.size(), g0.size(), r.size()});
}

URedContextPtr make_ured_context(std::size_t n, Residue p, const LinearFunctional& chi) {
    std::vector<std::size_t> order(n * n);
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    return std::make_shared<URedContext>(n, p, chi, std::move(order), std::array<std::size_t, 3>{0, n * n, 0});
}

// URedElement

URedElement::URedElement(URedContextPtr ctx, std::map<Code, Residue> terms) : ctx_(std::move(ctx)) {
    const Residue p = ctx_->modulus();
    for (auto [c, v] : terms)
        if (v % p) terms_.emplace(c, v % p);
}

URedElement URedElement::one(const URedContextPtr& ctx) { return monomial(ctx, 0); }

URedElement URedElement::monomial(const URedContextPtr& ctx, Code code) {
    return URedElement(ctx, {{code, 1}});
}

URedElement URedElement::generator(const URedContextPtr& ctx, std::size_t k) {
    detail::require(k < ctx->generators(), "generator index out of range");
    return straighten(ctx, {k});
}

URedElement URedElement::from_gl(const URedContextPtr& ctx, const GlElement& x) {
    detail::require_same(x.n() == ctx->n() && x.modulus() == ctx->modulus(), "element of a different gl_N");
    URedElement out(ctx);
    for (std::size_t k = 0; k < ctx->generators(); ++k)
        if (x.coords()[k]) out = out + generator(ctx, k).scaled(x.coords()[k]);
    return out;
}

void URedElement::check(const URedElement& o) const {
    detail::require_same(ctx_ == o.ctx_, "elements of different reduced enveloping algebras");
}

URedElement URedElement::operator+(const URedElement& o) const {
    check(o);
    const Residue p = ctx_->modulus();
    auto t = terms_;
    for (auto [c, v] : o.terms_) {
        Residue s = mod_add(t[c], v, p);
        if (s) t[c] = s;
        else t.erase(c);
    }
    URedElement out(ctx_);
    out.terms_ = std::move(t);
    return out;
}

URedElement URedElement::operator-(const URedElement& o) const {
    return *this + o.scaled(ctx_->modulus() - 1);
}

URedElement URedElement::scaled(Residue c) const {
    URedElement out(ctx_);
    c %= ctx_->modulus();
    if (!c) return out;
    for (auto [code, v] : terms_) out.terms_.emplace(code, mod_mul(v, c, ctx_->modulus()));
    return out;
}

bool URedElement::operator==(const URedElement& o) const { return ctx_ == o.ctx_ && terms_ == o.terms_; }

std::string URedElement::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    const std::size_t n = ctx_->n();
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        if (!first) os << " + ";
        first = false;
        auto a = ctx_->exponents(it->first);
        std::vector<std::string> factors;
        for (std::size_t pos = 0; pos < a.size(); ++pos) {
            if (!a[pos]) continue;
            const std::size_t k = ctx_->gl_index(pos);
            std::string f = "e" + std::to_string(k / n + 1) + std::to_string(k % n + 1);
            if (a[pos] > 1) f += "^" + std::to_string(a[pos]);
            factors.push_back(f);
        }
        if (factors.empty()) {
            os << it->second;
            continue;
        }
        if (it->second != 1) os << it->second << "*";
        for (std::size_t i = 0; i < factors.size(); ++i) os << (i ? "*" : "") << factors[i];
    }
    return os.str();
}

namespace {

// x_k * u for a gl index k.
URedElement left_multiply(std::size_t k, const URedElement& u) {
    const auto& ctx = u.context();
    const Residue p = ctx->modulus();
    const std::size_t pos = ctx->position(k);
    std::unordered_map<Code, Residue> acc;
    for (auto [c, v] : u.terms()) accumulate(acc, ctx->mul_gen_mono(pos, c), v, p);
    std::map<Code, Residue> t;
    for (auto [c, v] : acc)
        if (v) t.emplace(c, v);
    return URedElement(ctx, std::move(t));
}

}  // namespace

URedElement straighten(const URedContextPtr& ctx, const std::vector<std::size_t>& word) {
    URedElement out = URedElement::one(ctx);
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        detail::require(*it < ctx->generators(), "word letter out of range");
        out = left_multiply(*it, out);
    }
    return out;
}

URedElement multiply(const URedElement& u, const URedElement& v) {
    detail::require_same(u.context() == v.context(), "elements of different reduced enveloping algebras");
    const auto& ctx = u.context();
    URedElement out(ctx);
    for (auto [code, c] : u.terms()) {
        auto a = ctx->exponents(code);
        URedElement acc = v;
        for (std::size_t pos = a.size(); pos-- > 0;)
            for (Residue e = 0; e < a[pos]; ++e) acc = left_multiply(ctx->gl_index(pos), acc);
        out = out + acc.scaled(c);
    }
    return out;
}

// Modules

FpMatrix URedModule::act(const GlElement& x) const {
    detail::require_same(x.n() == n && x.modulus() == p, "element of a different gl_N");
    FpMatrix out(dim, dim, p);
    for (std::size_t k = 0; k < n * n; ++k)
        if (x.coords()[k]) out = out + rho[k].scaled(x.coords()[k]);
    return out;
}

ModuleCheck verify_module(const URedModule& m) {
    ModuleCheck out;
    const std::size_t g = m.n * m.n;
    for (std::size_t a = 0; a < g; ++a) {
        const auto xa = GlElement::unit(m.n, a / m.n, a % m.n, m.p);
        for (std::size_t b = 0; b < g; ++b) {
            const auto xb = GlElement::unit(m.n, b / m.n, b % m.n, m.p);
            if (m.rho[a] * m.rho[b] - m.rho[b] * m.rho[a] != m.act(bracket(xa, xb))) out.bracket = false;
        }
        auto lhs = m.rho[a].pow(m.p);
        auto rhs = m.act(p_power(xa)) + FpMatrix::identity(m.dim, m.p).scaled(mod_pow(m.chi(xa), m.p, m.p));
        if (lhs != rhs) out.p_power = false;
    }
    return out;
}

namespace {

// zeta_A on each gl index: zstar value of the column on the diagonal, zero elsewhere.
std::vector<Residue> zeta_values(const Tableau& a) {
    const auto& py = a.pyramid();
    const auto z = zstar_of(a);
    const std::size_t n = py.size();
    std::vector<Residue> out(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) out[i * n + i] = z.values[py.col(i)];
    return out;
}

// Evaluates the g₀ r part of a code on the generating vector; returns the r⁻ index or npos when killed.
struct Evaluator {
    const URedContext& ctx;
    std::vector<Residue> zeta;  // per gl index
    Code rminus_size;

    std::pair<Code, Residue> operator()(Code code) const {
        const auto& gr = ctx.groups();
        const Code low = code % rminus_size;
        Residue v = 1 % ctx.modulus();
        for (std::size_t pos = gr[0]; pos < ctx.generators(); ++pos) {
            const Residue e = static_cast<Residue>(code / ctx.stride(pos) % ctx.modulus());
            if (!e) continue;
            if (pos >= gr[0] + gr[1]) return {low, 0};
            v = mod_mul(v, mod_pow(zeta[ctx.gl_index(pos)], e, ctx.modulus()), ctx.modulus());
        }
        return {low, v};
    }
};

}  // namespace

URedModule induce_small_module(const URedContextPtr& ctx, const Tableau& a, std::size_t max_module_dim) {
    detail::require(is_column_connected(a), "induced module needs a column-connected tableau");
    detail::require_same(a.pyramid().size() == ctx->n() && a.modulus() == ctx->modulus(),
                         "tableau does not match the algebra");
    const Residue p = ctx->modulus();
    const auto& gr = ctx->groups();
    double dimd = std::pow(static_cast<double>(p), static_cast<double>(gr[0]));
    if (dimd > static_cast<double>(max_module_dim))
        throw BudgetExceeded("induced module has dimension " + std::to_string(static_cast<std::uint64_t>(dimd)) +
                             ", above max_module_dim " + std::to_string(max_module_dim));
    // r⁻ occupies the lowest positions, so the r⁻ part of a code is its residue mod p^{dim r⁻}.
    const std::size_t dim =
        static_cast<std::size_t>(gr[0] < ctx->generators() ? ctx->stride(gr[0]) : ctx->pbw_dim());
    Evaluator ev{*ctx, zeta_values(a), dim};
    URedModule m;
    m.n = ctx->n();
    m.p = p;
    m.dim = dim;
    m.chi = ctx->chi();
    for (std::size_t k = 0; k < ctx->generators(); ++k) {
        FpMatrix r(dim, dim, p);
        for (std::size_t b = 0; b < dim; ++b)
            for (auto [code, c] : ctx->mul_gen_mono(ctx->position(k), b)) {
                auto [row, v] = ev(code);
                if (v) r.at(row, b) = mod_add(r(row, b), mod_mul(c, v, p), p);
            }
        m.rho.push_back(std::move(r));
    }
    auto check = verify_module(m);
    detail::ensure(check.pass(), "induced module violates the U_chi relations");
    return m;
}

URedModule direct_sum(const URedModule& a, const URedModule& b) {
    detail::require_same(a.n == b.n && a.p == b.p, "modules over different algebras");
    URedModule out{a.n, a.p, a.dim + b.dim, {}, a.chi};
    for (std::size_t k = 0; k < a.rho.size(); ++k) {
        FpMatrix r(out.dim, out.dim, a.p);
        for (std::size_t i = 0; i < a.dim; ++i)
            for (std::size_t j = 0; j < a.dim; ++j) r.at(i, j) = a.rho[k](i, j);
        for (std::size_t i = 0; i < b.dim; ++i)
            for (std::size_t j = 0; j < b.dim; ++j) r.at(a.dim + i, a.dim + j) = b.rho[k](i, j);
        out.rho.push_back(std::move(r));
    }
    return out;
}

URedModule regular_module(const URedContextPtr& ctx, std::size_t max_module_dim) {
    if (ctx->pbw_dim() > max_module_dim)
        throw BudgetExceeded("regular module has dimension " + std::to_string(ctx->pbw_dim()) +
                             ", above max_module_dim " + std::to_string(max_module_dim));
    const std::size_t dim = static_cast<std::size_t>(ctx->pbw_dim());
    URedModule m{ctx->n(), ctx->modulus(), dim, {}, ctx->chi()};
    for (std::size_t k = 0; k < ctx->generators(); ++k) {
        FpMatrix r(dim, dim, m.p);
        for (std::size_t b = 0; b < dim; ++b)
            for (auto [code, c] : ctx->mul_gen_mono(ctx->position(k), b)) r.at(code, b) = c;
        m.rho.push_back(std::move(r));
    }
    return m;
}

URedModule character_module(std::size_t n, Residue p, const LinearFunctional& chi, const std::vector<Residue>& values) {
    detail::require_same(values.size() == n * n, "character needs one value per matrix unit");
    URedModule m{n, p, 1, {}, chi};
    for (auto v : values) m.rho.push_back(FpMatrix::from_rows(p, {{static_cast<long long>(v % p)}}));
    return m;
}

namespace {

std::vector<Residue> flatten(const FpMatrix& a) { return {a.data().begin(), a.data().end()}; }

FpMatrix unflatten(std::span<const Residue> v, std::size_t n, Residue p) {
    FpMatrix out(n, n, p);
    for (std::size_t i = 0; i < n * n; ++i) out.at(i / n, i % n) = v[i];
    return out;
}

bool invertible(const FpMatrix& a) { return rank(a) == a.rows(); }

}  // namespace

bool is_absolutely_simple(const URedModule& m) {
    const std::size_t d2 = m.dim * m.dim;
    // The image of U_chi is the algebra generated by the rho(x_k): close span{1} under left multiplication.
    EchelonBasis span(d2, m.p);
    std::vector<FpMatrix> queue{FpMatrix::identity(m.dim, m.p)};
    auto first = flatten(queue[0]);
    span.insert(first);
    while (!queue.empty() && span.rank() < d2) {
        FpMatrix x = std::move(queue.back());
        queue.pop_back();
        for (const auto& r : m.rho) {
            FpMatrix y = r * x;
            auto fy = flatten(y);
            if (span.insert(fy)) queue.push_back(std::move(y));
        }
    }
    return span.rank() == d2;
}

bool are_isomorphic(const URedModule& a, const URedModule& b) {
    detail::require_same(a.n == b.n && a.p == b.p, "modules over different algebras");
    if (a.dim != b.dim) return false;
    const std::size_t d = a.dim, d2 = d * d;
    // Unknown T (d×d, row-major) with rho_a(x) T - T rho_b(x) = 0.
    FpMatrix eq(0, d2, a.p);
    for (std::size_t k = 0; k < a.rho.size(); ++k) {
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                std::vector<Residue> row(d2, 0);
                for (std::size_t l = 0; l < d; ++l) {
                    row[l * d + j] = mod_add(row[l * d + j], a.rho[k](i, l), a.p);
                    row[i * d + l] = mod_sub(row[i * d + l], b.rho[k](l, j), a.p);
                }
                eq.append_row(row);
            }
    }
    Subspace sol = rref(eq).kernel;
    if (sol.dim() == 0) return false;
    for (std::size_t r = 0; r < sol.dim(); ++r)
        if (invertible(unflatten(sol.basis().row(r), d, a.p))) return true;
    std::mt19937_64 gen(0x5eed);
    std::uniform_int_distribution<Residue> pick(0, a.p - 1);
    for (int trial = 0; trial < 64; ++trial) {
        std::vector<Residue> v(d2, 0);
        for (std::size_t r = 0; r < sol.dim(); ++r) {
            const Residue c = pick(gen);
            for (std::size_t i = 0; i < d2; ++i) v[i] = mod_add(v[i], mod_mul(c, sol.basis()(r, i), a.p), a.p);
        }
        if (invertible(unflatten(v, d, a.p))) return true;
    }
    return false;
}

namespace {

// rho of every PBW monomial, indexed by code.
std::vector<FpMatrix> monomial_images(const URedContext& ctx, const URedModule& m) {
    const std::size_t total = static_cast<std::size_t>(ctx.pbw_dim());
    std::vector<FpMatrix> img(total);
    img[0] = FpMatrix::identity(m.dim, m.p);
    for (Code c = 1; c < total; ++c) {
        std::size_t j = 0;
        while (c / ctx.stride(j) % ctx.modulus() == 0) ++j;
        img[c] = m.rho[ctx.gl_index(j)] * img[c - ctx.stride(j)];
    }
    return img;
}

}  // namespace

FpMatrix module_action(const URedModule& m, const URedElement& u) {
    const auto& ctx = *u.context();
    detail::require_same(m.n == ctx.n() && m.p == ctx.modulus(), "module over a different algebra");
    FpMatrix out(m.dim, m.dim, m.p);
    for (auto [code, c] : u.terms()) {
        auto a = ctx.exponents(code);
        FpMatrix x = FpMatrix::identity(m.dim, m.p);
        for (std::size_t pos = a.size(); pos-- > 0;)
            for (Residue e = 0; e < a[pos]; ++e) x = m.rho[ctx.gl_index(pos)] * x;
        out = out + x.scaled(c);
    }
    return out;
}

Annihilator annihilator(const URedContextPtr& ctx, const URedModule& m, std::uint64_t max_pbw_dim) {
    detail::require_same(m.n == ctx->n() && m.p == ctx->modulus(), "module over a different algebra");
    if (ctx->pbw_dim() > max_pbw_dim)
        throw BudgetExceeded("U_chi has dimension " + std::to_string(ctx->pbw_dim()) + ", above max_pbw_dim " +
                             std::to_string(max_pbw_dim));
    const std::size_t total = static_cast<std::size_t>(ctx->pbw_dim());
    auto img = monomial_images(*ctx, m);
    const std::size_t d2 = m.dim * m.dim;
    FpMatrix coeffs(d2, total, m.p);
    for (std::size_t c = 0; c < total; ++c)
        for (std::size_t e = 0; e < d2; ++e) coeffs.at(e, c) = img[c].data()[e];
    Annihilator out;
    out.coimage = Subspace::span(coeffs);
    out.codim = out.coimage.dim();
    out.dim = total - out.codim;
    return out;
}

KWResult kw_divisibility(const URedModule& m, const GlElement& chi_preimage) {
    detail::require(kappa(chi_preimage).coords() == m.chi.coords(), "module has a different p-character");
    KWResult out;
    out.orbit_dim = orbit_dim(chi_preimage);
    const double pd = std::pow(static_cast<double>(m.p), static_cast<double>(out.orbit_dim));
    const double sq = static_cast<double>(m.dim) * static_cast<double>(m.dim);
    // dim² is divisible by p^d iff the p-adic valuation of dim is at least d/2.
    std::size_t v = 0;
    for (std::size_t x = m.dim; x && x % m.p == 0; x /= m.p) ++v;
    out.divisible = 2 * v >= out.orbit_dim;
    out.small = out.divisible && sq == pd;
    return out;
}

KazhdanDegreeData kazhdan_degrees(const SliceData& slice) {
    KazhdanDegreeData out;
    out.dynkin = slice.degrees;
    for (auto d : out.dynkin) out.kazhdan.push_back(d + 2);
    return out;
}

KazhdanSymbolReport kazhdan_symbol_check(const SliceData& slice, const LinearFunctional& eta) {
    const std::size_t n = slice.pyramid.size();
    const Residue p = slice.p;
    detail::require_same(eta.preimage.n() == n && eta.preimage.modulus() == p, "eta on a different gl_N");
    const GlElement u = eta.preimage - slice.chi.preimage;
    // kappa(u) with u in g(j) pairs with g(-j); eta - chi vanishes on g(<= -2) iff u lies in g(<= 1).
    for (std::size_t k = 0; k < n * n; ++k)
        if (u.coords()[k] && slice.degrees[k] > 1)
            throw InvalidArgument("eta lies outside chi + kappa(g(<= 1))");
    KazhdanSymbolReport out;
    for (std::size_t k = 0; k < n * n; ++k) {
        const int i = slice.degrees[k];
        const auto x = GlElement::unit(n, k / n, k % n, p);
        ++out.checked;
        const Residue cx = slice.chi(x), ex = eta(x);
        if (i != -2 && cx != 0) out.chi_vanishes = false;
        if (i <= -2 && ex != cx) out.eta_agrees = false;
        const auto xp = p_power(x);
        for (std::size_t l = 0; l < n * n; ++l)
            if (xp.coords()[l] && slice.degrees[l] != i * static_cast<int>(p)) out.p_map_graded = false;
        // Symbol of x^p - x^[p] - eta(x)^p in Kazhdan degree p(i+2).
        if (i < -2) {
            ++out.case_below;
            // x^[p] and eta(x)^p have lower Kazhdan degree except when they vanish; eta(x) = chi(x) = 0.
            if (ex != 0 || cx != 0) out.symbol_matches = false;
        } else if (i == -2) {
            ++out.case_minus_two;
            // Both scalars sit in degree 0 = p(i+2); they agree.
            if (ex != cx) out.symbol_matches = false;
        } else {
            ++out.case_above;
            // x^[p] has degree ip + 2 < p(i+2) and eta(x)^p has degree 0 < p(i+2); chi(x) = 0.
            if (cx != 0) out.symbol_matches = false;
        }
    }
    return out;
}

URedElement gelfand_element(const URedContextPtr& ctx, std::size_t k) {
    const std::size_t n = ctx->n();
    detail::require(k >= 1 && k <= n, "Gelfand invariant degree out of range");
    URedElement out(ctx);
    std::vector<std::size_t> idx(k, 0);
    while (true) {
        std::vector<std::size_t> word(k);
        for (std::size_t t = 0; t < k; ++t) word[t] = idx[t] * n + idx[(t + 1) % k];
        out = out + straighten(ctx, word);
        std::size_t t = 0;
        while (t < k && ++idx[t] == n) idx[t++] = 0;
        if (t == k) break;
    }
    for (std::size_t g = 0; g < ctx->generators(); ++g) {
        auto x = URedElement::generator(ctx, g);
        detail::ensure(multiply(x, out) == multiply(out, x), "Gelfand invariant is not central");
    }
    return out;
}

Residue gelfand_central_character(const URedContextPtr& ctx, const URedModule& m, std::size_t k) {
    const auto c = gelfand_element(ctx, k);
    const auto a = module_action(m, c);
    const Residue s = m.dim ? a(0, 0) : 0;
    detail::ensure(a == FpMatrix::identity(m.dim, m.p).scaled(s), "Gelfand invariant does not act by a scalar");
    return s;
}

Residue harish_chandra_scalar(const URedElement& u, const Tableau& a) {
    const auto& ctx = u.context();
    const std::size_t n = ctx->n();
    const Residue p = ctx->modulus();
    for (auto [code, c] : u.terms()) {
        auto e = ctx->exponents(code);
        std::vector<long long> wt(n, 0);
        for (std::size_t pos = 0; pos < e.size(); ++pos) {
            const std::size_t k = ctx->gl_index(pos);
            wt[k / n] += e[pos];
            wt[k % n] -= e[pos];
        }
        for (auto w : wt)
            if (w % static_cast<long long>(p) != 0)
                throw InvalidArgument("Harish-Chandra projection needs a weight-zero element");
    }
    const Evaluator ev{*ctx, zeta_values(a), 1};
    const auto& gr = ctx->groups();
    Residue s = 0;
    for (auto [code, c] : u.terms()) {
        bool in_g0 = true;
        for (std::size_t pos = 0; pos < gr[0]; ++pos)
            if (code / ctx->stride(pos) % p) in_g0 = false;
        if (!in_g0) continue;
        s = mod_add(s, mod_mul(c, ev(code).second, p), p);
    }
    const auto m = induce_small_module(ctx, a);
    const auto act = module_action(m, u);
    detail::ensure(act == FpMatrix::identity(m.dim, p).scaled(s),
                   "Harish-Chandra scalar disagrees with the action on the induced module");
    return s;
}

}  // namespace moq
