#include "moq/poisson.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>

namespace moq {

ReducedPoissonAlgebra::ReducedPoissonAlgebra(std::size_t n, Residue p, LinearFunctional chi, std::uint64_t max_dim)
    : n_(n), p_(p), chi_(std::move(chi)) {
    detail::require_same(chi_.preimage.n() == n && chi_.preimage.modulus() == p, "chi does not live on gl_N over F_p");
    const std::size_t g = n * n;
    std::uint64_t d = 1;
    for (std::size_t k = 0; k < g; ++k) {
        stride_.push_back(static_cast<std::size_t>(d));
        d *= p;
        if (d > max_dim)
            throw BudgetExceeded("reduced symmetric algebra has dimension " + std::to_string(p) + "^" +
                                 std::to_string(g) + ", above max_pbw_dim " + std::to_string(max_dim));
    }
    dim_ = static_cast<std::size_t>(d);
    for (std::size_t k = 0; k < g; ++k) chi_values_.push_back(chi_(GlElement::unit(n, k / n, k % n, p)));
    gen_bracket_.resize(g * g);
    for (std::size_t a = 0; a < g; ++a)
        for (std::size_t b = 0; b < g; ++b) {
            auto br = moq::bracket(GlElement::unit(n, a / n, a % n, p), GlElement::unit(n, b / n, b % n, p));
            for (std::size_t l = 0; l < g; ++l)
                if (br.coords()[l]) gen_bracket_[a * g + b].emplace_back(l, br.coords()[l]);
        }
}

ReducedPoissonAlgebra build_reduced_poisson(std::size_t n, Residue p, const LinearFunctional& chi,
                                            std::uint64_t max_dim) {
    return ReducedPoissonAlgebra(n, p, chi, max_dim);
}

std::vector<Residue> ReducedPoissonAlgebra::exponents(std::size_t m) const {
    std::vector<Residue> a(generators());
    for (std::size_t k = 0; k < a.size(); ++k) a[k] = static_cast<Residue>(m / stride_[k] % p_);
    return a;
}

std::size_t ReducedPoissonAlgebra::index(const std::vector<Residue>& a) const {
    std::size_t m = 0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        detail::require(a[k] < p_, "exponent out of range");
        m += a[k] * stride_[k];
    }
    return m;
}

ReducedPoissonAlgebra::Element ReducedPoissonAlgebra::one() const { return monomial(0); }

ReducedPoissonAlgebra::Element ReducedPoissonAlgebra::monomial(std::size_t i) const {
    Element f(dim_, 0);
    f[i] = 1 % p_;
    return f;
}

ReducedPoissonAlgebra::Element ReducedPoissonAlgebra::generator(std::size_t k) const { return monomial(stride_[k]); }

std::pair<Residue, std::size_t> ReducedPoissonAlgebra::generator_times_monomial(std::size_t k, std::size_t m) const {
    const Residue a = static_cast<Residue>(m / stride_[k] % p_);
    if (a + 1 < p_) return {1 % p_, m + stride_[k]};
    // x^p = chi(x)^p = chi(x) over F_p.
    return {chi_values_[k], m - a * stride_[k]};
}

std::vector<std::pair<std::size_t, Residue>> ReducedPoissonAlgebra::generator_bracket_monomial(std::size_t k,
                                                                                             std::size_t m) const {
    std::vector<std::pair<std::size_t, Residue>> out;
    const std::size_t g = generators();
    for (std::size_t l = 0; l < g; ++l) {
        const Residue a = static_cast<Residue>(m / stride_[l] % p_);
        if (a == 0) continue;
        const std::size_t rest = m - stride_[l];
        for (auto [t, c] : gen_bracket_[k * g + l]) {
            auto [coef, mono] = generator_times_monomial(t, rest);
            Residue v = mod_mul(mod_mul(a, c, p_), coef, p_);
            if (v) out.emplace_back(mono, v);
        }
    }
    return out;
}

ReducedPoissonAlgebra::Element ReducedPoissonAlgebra::multiply(const Element& f, const Element& g) const {
    detail::require_same(f.size() == dim_ && g.size() == dim_, "element has the wrong dimension");
    Element out(dim_, 0);
    const std::size_t gens = generators();
    for (std::size_t i = 0; i < dim_; ++i) {
        if (!f[i]) continue;
        for (std::size_t j = 0; j < dim_; ++j) {
            if (!g[j]) continue;
            Residue coef = mod_mul(f[i], g[j], p_);
            std::size_t m = 0;
            for (std::size_t k = 0; k < gens && coef; ++k) {
                Residue s = static_cast<Residue>(i / stride_[k] % p_ + j / stride_[k] % p_);
                if (s >= p_) {
                    s -= p_;
                    coef = mod_mul(coef, chi_values_[k], p_);
                }
                m += s * stride_[k];
            }
            if (coef) out[m] = mod_add(out[m], coef, p_);
        }
    }
    return out;
}

ReducedPoissonAlgebra::Element ReducedPoissonAlgebra::bracket(const Element& f, const Element& g) const {
    detail::require_same(f.size() == dim_ && g.size() == dim_, "element has the wrong dimension");
    // {x^a, h} = sum_k a_k x^{a - e_k} {x_k, h}
    Element out(dim_, 0);
    const std::size_t gens = generators();
    for (std::size_t i = 0; i < dim_; ++i) {
        if (!f[i]) continue;
        for (std::size_t k = 0; k < gens; ++k) {
            const Residue a = static_cast<Residue>(i / stride_[k] % p_);
            if (!a) continue;
            Element xk_g(dim_, 0);
            for (std::size_t j = 0; j < dim_; ++j) {
                if (!g[j]) continue;
                for (auto [mono, c] : generator_bracket_monomial(k, j))
                    xk_g[mono] = mod_add(xk_g[mono], mod_mul(c, g[j], p_), p_);
            }
            Element term = multiply(monomial(i - stride_[k]), xk_g);
            const Residue s = mod_mul(a, f[i], p_);
            for (std::size_t t = 0; t < dim_; ++t)
                if (term[t]) out[t] = mod_add(out[t], mod_mul(s, term[t], p_), p_);
        }
    }
    return out;
}

ReducedPoissonAlgebra::Element ReducedPoissonAlgebra::add(const Element& f, const Element& g) const {
    Element out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) out[i] = mod_add(f[i], g[i], p_);
    return out;
}

ReducedPoissonAlgebra::Element ReducedPoissonAlgebra::scale(const Element& f, Residue c) const {
    Element out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) out[i] = mod_mul(f[i], c % p_, p_);
    return out;
}

Residue ReducedPoissonAlgebra::evaluate_at_chi(const Element& f) const {
    Residue acc = 0;
    for (std::size_t i = 0; i < dim_; ++i) {
        if (!f[i]) continue;
        Residue v = f[i];
        for (std::size_t k = 0; k < generators() && v; ++k)
            v = mod_mul(v, mod_pow(chi_values_[k], i / stride_[k] % p_, p_), p_);
        acc = mod_add(acc, v, p_);
    }
    return acc;
}

namespace {

// Row vector q times the operator f -> x_k f (so (qL)(m) = q(x_k m)).
std::vector<Residue> times_mult(const ReducedPoissonAlgebra& alg, const std::vector<Residue>& q, std::size_t k) {
    std::vector<Residue> out(alg.dim(), 0);
    for (std::size_t m = 0; m < alg.dim(); ++m) {
        auto [c, img] = alg.generator_times_monomial(k, m);
        if (c && q[img]) out[m] = mod_mul(c, q[img], alg.modulus());
    }
    return out;
}

std::vector<Residue> times_bracket(const ReducedPoissonAlgebra& alg, const std::vector<Residue>& q, std::size_t k) {
    const Residue p = alg.modulus();
    std::vector<Residue> out(alg.dim(), 0);
    for (std::size_t m = 0; m < alg.dim(); ++m) {
        Residue acc = 0;
        for (auto [img, c] : alg.generator_bracket_monomial(k, m))
            if (q[img]) acc = mod_add(acc, mod_mul(c, q[img], p), p);
        out[m] = acc;
    }
    return out;
}

}  // namespace

bool PoissonIdeal::contains(const ReducedPoissonAlgebra::Element& f) const {
    auto v = equations.apply(f);
    return std::all_of(v.begin(), v.end(), [](Residue x) { return x == 0; });
}

PoissonIdeal max_poisson_ideal(const ReducedPoissonAlgebra& alg, double max_work) {
    const std::size_t dim = alg.dim();
    const Residue p = alg.modulus();
    const std::size_t gens = alg.generators();
    const std::size_t expected = static_cast<std::size_t>(
        std::pow(static_cast<double>(p), static_cast<double>(orbit_dim(alg.chi().preimage))) + 0.5);
    // Each equation is composed with 2N² operators, each image costing about N² work per monomial.
    const double work = static_cast<double>(expected) * expected * 2.0 * gens * gens * dim;
    if (work > max_work) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.1e", work);
        throw BudgetExceeded(std::string("maximal Poisson ideal needs about ") + buf + " operations");
    }

    // Equations of P span the smallest space containing evaluation at chi and stable under
    // composition with every x_k * - and {x_k, -}.
    std::vector<Residue> ev(dim);
    for (std::size_t m = 0; m < dim; ++m) ev[m] = alg.evaluate_at_chi(alg.monomial(m));
    EchelonBasis basis(dim, p);
    std::deque<std::vector<Residue>> queue;
    {
        auto v = ev;
        basis.insert(v);
        queue.push_back(v);
    }
    while (!queue.empty()) {
        auto q = std::move(queue.front());
        queue.pop_front();
        for (std::size_t k = 0; k < gens; ++k) {
            for (int kind = 0; kind < 2; ++kind) {
                auto v = kind == 0 ? times_mult(alg, q, k) : times_bracket(alg, q, k);
                auto w = v;
                if (basis.insert(w)) queue.push_back(v);
            }
        }
    }
    PoissonIdeal ideal;
    ideal.equations = FpMatrix(0, dim, p);
    for (const auto& r : basis.rows()) ideal.equations.append_row(r);
    auto piv = reduce_rows_in_place(ideal.equations);
    ideal.codim = piv.size();
    ideal.dim = dim - ideal.codim;
    ideal.quotient_basis = piv;
    detail::ensure(ideal.codim == expected, "codim of the maximal Poisson ideal is " + std::to_string(ideal.codim) +
                                                ", expected p^dim O_chi = " + std::to_string(expected));
    return ideal;
}

PoissonIdealCheck check_poisson_ideal(const ReducedPoissonAlgebra& alg, const PoissonIdeal& ideal,
                                      std::size_t max_quotient) {
    PoissonIdealCheck out;
    const std::size_t dim = alg.dim();
    const Residue p = alg.modulus();
    const std::size_t gens = alg.generators();
    const std::size_t r = ideal.codim;
    // P = ker Q is stable under T iff Q T vanishes on ker Q, i.e. each row of Q T lies in the row space of Q.
    Subspace rows = Subspace::span(ideal.equations);
    for (std::size_t k = 0; k < gens; ++k)
        for (std::size_t i = 0; i < r; ++i) {
            std::vector<Residue> q(ideal.equations.row(i).begin(), ideal.equations.row(i).end());
            if (!rows.contains(times_mult(alg, q, k))) out.is_ideal = false;
            if (!rows.contains(times_bracket(alg, q, k))) out.bracket_stable = false;
        }
    if (r > max_quotient || !out.is_ideal || !out.bracket_stable) return out;
    out.maximality_checked = true;

    // Induced operators on A/P in the basis of quotient_basis monomials: column i is Q T(x^{c_i}).
    std::vector<FpMatrix> ops;
    for (std::size_t k = 0; k < gens; ++k) {
        FpMatrix lm(r, r, p), bm(r, r, p);
        for (std::size_t i = 0; i < r; ++i) {
            const std::size_t m = ideal.quotient_basis[i];
            auto [c, img] = alg.generator_times_monomial(k, m);
            std::vector<Residue> f(dim, 0), g(dim, 0);
            f[img] = c;
            for (auto [mono, v] : alg.generator_bracket_monomial(k, m)) g[mono] = mod_add(g[mono], v, p);
            auto qf = ideal.equations.apply(f), qg = ideal.equations.apply(g);
            for (std::size_t t = 0; t < r; ++t) {
                lm.at(t, i) = qf[t];
                bm.at(t, i) = qg[t];
            }
        }
        ops.push_back(std::move(lm));
        ops.push_back(std::move(bm));
    }
    // Evaluation at chi on the quotient.
    std::vector<Residue> ev(r);
    for (std::size_t i = 0; i < r; ++i) ev[i] = alg.evaluate_at_chi(alg.monomial(ideal.quotient_basis[i]));
    auto dot = [&](const std::vector<Residue>& v) {
        Residue acc = 0;
        for (std::size_t t = 0; t < r; ++t) acc = mod_add(acc, mod_mul(ev[t], v[t], p), p);
        return acc;
    };
    for (std::size_t i = 0; i < r; ++i) {
        EchelonBasis closure(r, p);
        std::deque<std::vector<Residue>> queue;
        std::vector<Residue> start(r, 0);
        start[i] = 1;
        bool unit = dot(start) != 0;
        auto w = start;
        closure.insert(w);
        queue.push_back(start);
        while (!queue.empty() && !unit) {
            auto v = std::move(queue.front());
            queue.pop_front();
            for (const auto& op : ops) {
                auto img = op.apply(v);
                if (dot(img) != 0) unit = true;
                auto w2 = img;
                if (closure.insert(w2)) queue.push_back(img);
            }
        }
        if (!unit) out.maximal = false;
    }
    return out;
}

}  // namespace moq
