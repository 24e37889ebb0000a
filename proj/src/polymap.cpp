#include "keller/polymap.hpp"

#include <algorithm>

namespace keller {

namespace {

/// Scalar matrix determinant by cofactor expansion (desk-scale n).
Scalar scalar_det(const std::vector<std::vector<Scalar>>& m, const Ring& ring) {
    std::size_t n = m.size();
    if (n == 0) return Scalar::one(ring);
    if (n == 1) return m[0][0];
    Scalar acc = Scalar::zero(ring);
    for (std::size_t i = 0; i < n; ++i) {
        if (m[i][0].is_zero()) continue;
        std::vector<std::vector<Scalar>> minor;
        minor.reserve(n - 1);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == i) continue;
            std::vector<Scalar> row;
            row.reserve(n - 1);
            for (std::size_t c = 1; c < n; ++c) row.push_back(m[r][c]);
            minor.push_back(std::move(row));
        }
        Scalar term = m[i][0] * scalar_det(minor, ring);
        acc = (i % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

Polynomial mult_trunc(const Polynomial& a, const Polynomial& b, long cap) {
    Polynomial r(a.ring(), a.vars());
    for (const auto& [m, c] : a.terms()) {
        if (static_cast<long>(m.degree()) > cap) continue;
        for (const auto& [mm, cc] : b.terms()) {
            if (static_cast<long>(m.degree() + mm.degree()) > cap) continue;
            r.add_term(m * mm, c * cc);
        }
    }
    return r;
}

Polynomial subst_trunc(const Polynomial& f, std::span<const Polynomial> images, long cap) {
    std::vector<std::vector<Polynomial>> pows(f.nvars());
    const Ring& ring = f.ring();
    const VarsPtr& vars = f.vars();
    auto power = [&](std::size_t i, std::uint32_t e) -> const Polynomial& {
        auto& tab = pows[i];
        if (tab.empty()) tab.push_back(Polynomial::constant(Scalar::one(ring), vars));
        while (tab.size() <= e) tab.push_back(mult_trunc(tab.back(), images[i], cap));
        return tab[e];
    };
    Polynomial acc(ring, vars);
    for (const auto& [m, c] : f.terms()) {
        Polynomial t = Polynomial::constant(c, vars);
        for (std::size_t i = 0; i < f.nvars(); ++i)
            if (m.exponent(i) > 0) t = mult_trunc(t, power(i, m.exponent(i)), cap);
        acc = acc + t;
    }
    return acc;
}

} // namespace

PolyMap::PolyMap(std::vector<Polynomial> components) : comps_(std::move(components)) {
    if (comps_.empty()) throw error("PolyMap needs at least one component");
    for (const auto& c : comps_)
        if (c.ring() != comps_[0].ring() || !(*c.vars() == *comps_[0].vars()))
            throw ring_mismatch_error("PolyMap components disagree on ring/variables");
    if (comps_.size() > vars()->size())
        throw error("PolyMap has more components than variables");
}

PolyMap PolyMap::identity(const Ring& ring, const VarsPtr& vars) {
    std::vector<Polynomial> comps;
    comps.reserve(vars->size());
    for (std::size_t i = 0; i < vars->size(); ++i)
        comps.push_back(Polynomial::variable(ring, vars, i));
    return PolyMap(std::move(comps));
}

std::vector<Scalar> PolyMap::apply(std::span<const Scalar> point) const {
    if (params() != 0) throw error("apply: map has parameter variables");
    std::vector<Scalar> out;
    out.reserve(n());
    for (const auto& c : comps_) out.push_back(c.evaluate(point));
    return out;
}

long map_degree(const Polynomial& f, std::size_t n_map_vars) {
    if (f.is_zero()) return -1;
    std::size_t first = f.nvars() - n_map_vars;
    long best = 0;
    for (const auto& [m, c] : f.terms()) {
        long d = 0;
        for (std::size_t i = first; i < f.nvars(); ++i) d += m.exponent(i);
        best = std::max(best, d);
    }
    return best;
}

long degree(const PolyMap& F) {
    long d = -1;
    for (const auto& c : F.components()) d = std::max(d, map_degree(c, F.n()));
    return d;
}

PolyMatrix::PolyMatrix(std::size_t n, const Ring& ring, const VarsPtr& vars)
    : rows_(n, std::vector<Polynomial>(n, Polynomial::zero(ring, vars))) {}

PolyMatrix jacobian(const PolyMap& F) {
    PolyMatrix J(F.n(), F.ring(), F.vars());
    for (std::size_t i = 0; i < F.n(); ++i)
        for (std::size_t j = 0; j < F.n(); ++j)
            J.at(i, j) = F.component(i).derivative(F.xvar(j));
    return J;
}

namespace {

Polynomial det_cofactor(const PolyMatrix& M, std::vector<std::size_t>& rows,
                        std::vector<std::size_t>& cols) {
    const std::size_t k = rows.size();
    if (k == 1) return M.at(rows[0], cols[0]);
    Polynomial acc = Polynomial::zero(M.at(0, 0).ring(), M.at(0, 0).vars());
    std::size_t col = cols[0];
    std::vector<std::size_t> subcols(cols.begin() + 1, cols.end());
    for (std::size_t i = 0; i < k; ++i) {
        const Polynomial& e = M.at(rows[i], col);
        if (e.is_zero()) continue;
        std::vector<std::size_t> subrows;
        subrows.reserve(k - 1);
        for (std::size_t r = 0; r < k; ++r)
            if (r != i) subrows.push_back(rows[r]);
        Polynomial minor = det_cofactor(M, subrows, subcols);
        Polynomial term = e * minor;
        acc = (i % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

Polynomial det_bareiss(const PolyMatrix& M) {
    const std::size_t n = M.size();
    const Ring& ring = M.at(0, 0).ring();
    const VarsPtr& vars = M.at(0, 0).vars();
    std::vector<std::vector<Polynomial>> a(n, std::vector<Polynomial>(n, Polynomial::zero(ring, vars)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = M.at(i, j);
    bool negate = false;
    Polynomial prev = Polynomial::constant(Scalar::one(ring), vars);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        // first nonzero pivot in column order
        std::size_t piv = k;
        while (piv < n && a[piv][k].is_zero()) ++piv;
        if (piv == n) return Polynomial::zero(ring, vars);
        if (piv != k) {
            std::swap(a[piv], a[k]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Polynomial num = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                a[i][j] = exact_divide(num, prev);
            }
            a[i][k] = Polynomial::zero(ring, vars);
        }
        prev = a[k][k];
    }
    Polynomial det = a[n - 1][n - 1];
    return negate ? -det : det;
}

} // namespace

Polynomial determinant(const PolyMatrix& M) {
    if (M.size() == 0) throw error("determinant of empty matrix");
    if (M.size() <= 4) {
        std::vector<std::size_t> rows(M.size()), cols(M.size());
        for (std::size_t i = 0; i < M.size(); ++i) rows[i] = cols[i] = i;
        return det_cofactor(M, rows, cols);
    }
    return det_bareiss(M);
}

PolyMap compose(const PolyMap& F, const PolyMap& G) {
    if (F.n() != G.n()) throw ring_mismatch_error("compose: dimension mismatch");
    if (F.ring() != G.ring() || !(*F.vars() == *G.vars()))
        throw ring_mismatch_error("compose: ring/variable mismatch");
    std::vector<Polynomial> images;
    images.reserve(F.vars()->size());
    for (std::size_t i = 0; i < F.params(); ++i)
        images.push_back(Polynomial::variable(F.ring(), F.vars(), i));
    for (std::size_t j = 0; j < G.n(); ++j) images.push_back(G.component(j));
    std::vector<Polynomial> comps;
    comps.reserve(F.n());
    for (std::size_t i = 0; i < F.n(); ++i) comps.push_back(F.component(i).substitute(images));
    return PolyMap(std::move(comps));
}

PolyMap affine_part(const PolyMap& F) {
    std::size_t first = F.params();
    std::vector<Polynomial> comps;
    comps.reserve(F.n());
    for (const auto& c : F.components()) {
        Polynomial a(c.ring(), c.vars());
        for (const auto& [m, coef] : c.terms()) {
            long d = 0;
            for (std::size_t i = first; i < c.nvars(); ++i) d += m.exponent(i);
            if (d <= 1) a.add_term(m, coef);
        }
        comps.push_back(std::move(a));
    }
    return PolyMap(std::move(comps));
}

bool has_identity_affine_part(const PolyMap& F) {
    return affine_part(F) == PolyMap::identity(F.ring(), F.vars());
}

PolyMap reduce_map_mod_p(const PolyMap& F, const Ring& field) {
    return convert_map(F, field);
}

PolyMap convert_map(const PolyMap& F, const Ring& target) {
    std::vector<Polynomial> comps;
    comps.reserve(F.n());
    for (const auto& c : F.components()) comps.push_back(convert_ring(c, target));
    return PolyMap(std::move(comps));
}

namespace {

/// Inverse of the affine map x -> Lx + t over a field; division_error if L is
/// singular. Returns the map x -> Linv x - Linv t.
PolyMap invert_affine(const PolyMap& A) {
    const Ring& ring = A.ring();
    const VarsPtr& vars = A.vars();
    const std::size_t n = A.n();
    std::vector<std::vector<Scalar>> aug(n, std::vector<Scalar>(2 * n, Scalar::zero(ring)));
    std::vector<Scalar> t(n, Scalar::zero(ring));
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& [m, c] : A.component(i).terms()) {
            if (m.is_constant()) {
                t[i] = c;
                continue;
            }
            for (std::size_t j = 0; j < n; ++j)
                if (m.exponent(A.xvar(j)) == 1 && m.degree() == 1) aug[i][j] = c;
        }
        aug[i][n + i] = Scalar::one(ring);
    }
    // Gauss-Jordan
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && aug[piv][col].is_zero()) ++piv;
        if (piv == n) throw division_error("affine part is not invertible");
        std::swap(aug[piv], aug[col]);
        Scalar inv = aug[col][col].inv();
        for (std::size_t j = 0; j < 2 * n; ++j) aug[col][j] = aug[col][j] * inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || aug[r][col].is_zero()) continue;
            Scalar f = aug[r][col];
            for (std::size_t j = 0; j < 2 * n; ++j) aug[r][j] = aug[r][j] - f * aug[col][j];
        }
    }
    std::vector<Polynomial> comps;
    comps.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Polynomial c(ring, vars);
        Scalar shift = Scalar::zero(ring);
        for (std::size_t j = 0; j < n; ++j) {
            if (!aug[i][n + j].is_zero())
                c = c + Polynomial::variable(ring, vars, A.xvar(j)).scaled(aug[i][n + j]);
            shift = shift + aug[i][n + j] * t[j];
        }
        c = c + Polynomial::constant(-shift, vars);
        comps.push_back(std::move(c));
    }
    return PolyMap(std::move(comps));
}

} // namespace

std::optional<PolyMap> formal_inverse(const PolyMap& F, long degree_bound) {
    if (!F.ring().is_field()) throw error("formal_inverse requires field coefficients");
    if (F.params() != 0) throw error("formal_inverse: map has parameter variables");
    if (degree_bound < 1) throw error("formal_inverse: degree bound must be >= 1");
    const Ring& ring = F.ring();
    const VarsPtr& vars = F.vars();
    const PolyMap id = PolyMap::identity(ring, vars);

    PolyMap Ainv = invert_affine(affine_part(F));
    PolyMap Fn = compose(Ainv, F); // identity affine part
    std::vector<Polynomial> H;
    H.reserve(F.n());
    for (std::size_t i = 0; i < F.n(); ++i)
        H.push_back(Fn.component(i) - id.component(i));

    // fixed point of G = x - H(G), truncated at the degree bound
    std::vector<Polynomial> G = id.components();
    for (long iter = 0; iter < degree_bound; ++iter) {
        std::vector<Polynomial> next;
        next.reserve(F.n());
        for (std::size_t i = 0; i < F.n(); ++i)
            next.push_back(id.component(i) - subst_trunc(H[i], G, degree_bound));
        if (next == G) break;
        G = std::move(next);
    }

    PolyMap candidate = compose(PolyMap(std::move(G)), Ainv);
    if (compose(F, candidate) != id || compose(candidate, F) != id) return std::nullopt;
    return candidate;
}

std::optional<PolyMap> is_invertible(const PolyMap& F) {
    long d = degree(F);
    if (d < 1) throw division_error("affine part is not invertible");
    long bound = 1;
    for (std::size_t i = 1; i < F.n(); ++i) {
        bound *= d;
        if (bound > 1000000) throw budget_exceeded("inverse degree bound too large");
    }
    return formal_inverse(F, std::max<long>(bound, 1));
}

PolyMap apply_recipe(const TameRecipe& recipe, const Ring& ring, const VarsPtr& vars) {
    const std::size_t n = vars->size();
    PolyMap acc = PolyMap::identity(ring, vars);
    auto factor_map = [&](const std::variant<AffineFactor, TriangularFactor>& f) -> PolyMap {
        if (const auto* a = std::get_if<AffineFactor>(&f)) {
            if (!scalar_det(a->matrix, ring).is_one())
                throw error("affine factor must have determinant 1");
            std::vector<Polynomial> comps;
            for (std::size_t i = 0; i < n; ++i) {
                Polynomial c = Polynomial::constant(a->translation[i], vars);
                for (std::size_t j = 0; j < n; ++j)
                    if (!a->matrix[i][j].is_zero())
                        c = c + Polynomial::variable(ring, vars, j).scaled(a->matrix[i][j]);
                comps.push_back(std::move(c));
            }
            return PolyMap(std::move(comps));
        }
        const auto& tr = std::get<TriangularFactor>(f);
        for (const auto& [m, c] : tr.shift.terms())
            for (std::size_t j = 0; j <= tr.index; ++j)
                if (m.exponent(j) != 0)
                    throw error("triangular factor may only use later variables");
        std::vector<Polynomial> comps;
        for (std::size_t i = 0; i < n; ++i) {
            Polynomial c = Polynomial::variable(ring, vars, i);
            if (i == tr.index) c = c + tr.shift;
            comps.push_back(std::move(c));
        }
        return PolyMap(std::move(comps));
    };
    for (const auto& f : recipe.factors) acc = compose(acc, factor_map(f));
    return acc;
}

TameRecipe reverse_recipe(const TameRecipe& recipe) {
    TameRecipe out;
    for (auto it = recipe.factors.rbegin(); it != recipe.factors.rend(); ++it) {
        if (const auto* a = std::get_if<AffineFactor>(&*it)) {
            const std::size_t n = a->matrix.size();
            const Ring ring = a->matrix[0][0].ring();
            // determinant-1 inverse via adjugate
            std::vector<std::vector<Scalar>> inv(n, std::vector<Scalar>(n, Scalar::zero(ring)));
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    std::vector<std::vector<Scalar>> minor;
                    for (std::size_t r = 0; r < n; ++r) {
                        if (r == j) continue;
                        std::vector<Scalar> row;
                        for (std::size_t c = 0; c < n; ++c)
                            if (c != i) row.push_back(a->matrix[r][c]);
                        minor.push_back(std::move(row));
                    }
                    Scalar cof = scalar_det(minor, ring);
                    inv[i][j] = ((i + j) % 2 == 0) ? cof : -cof;
                }
            std::vector<Scalar> tr(n, Scalar::zero(ring));
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) tr[i] = tr[i] - inv[i][j] * a->translation[j];
            out.factors.push_back(AffineFactor{std::move(inv), std::move(tr)});
        } else {
            const auto& trf = std::get<TriangularFactor>(*it);
            out.factors.push_back(TriangularFactor{trf.index, -trf.shift});
        }
    }
    return out;
}

std::pair<PolyMap, TameRecipe> sample_tame(std::size_t n, long degree_budget,
                                           std::size_t factor_count, Rng& rng) {
    if (degree_budget < 1) throw error("sample_tame: degree budget must be >= 1");
    const Ring ring = Ring::integers();
    std::vector<std::string> names;
    names.reserve(n);
    for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i + 1));
    VarsPtr vars = make_vars(names);

    TameRecipe recipe;
    long deg_product = 1;
    for (std::size_t k = 0; k < factor_count; ++k) {
        bool want_triangular = rng.coin();
        long room = degree_budget / deg_product;
        if (want_triangular && room >= 2 && n >= 2) {
            std::size_t idx = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(n) - 2));
            long df = rng.uniform(2, std::min<long>(3, room));
            Polynomial shift(ring, vars);
            int monomials = static_cast<int>(rng.uniform(1, 2));
            for (int mcount = 0; mcount < monomials; ++mcount) {
                std::vector<std::uint32_t> e(n, 0);
                long deg = rng.uniform(1, df);
                for (long d = 0; d < deg; ++d) {
                    std::size_t v =
                        static_cast<std::size_t>(rng.uniform(static_cast<long>(idx) + 1,
                                                             static_cast<long>(n) - 1));
                    e[v] += 1;
                }
                long c = rng.uniform(-3, 3);
                if (c == 0) c = 1;
                shift.add_term(Monomial(std::move(e)), Scalar::of_int(c, ring));
            }
            if (shift.is_zero()) continue;
            deg_product *= std::max<long>(map_degree(shift, n), 1);
            recipe.factors.push_back(TriangularFactor{idx, std::move(shift)});
        } else {
            // product of two elementary shears keeps determinant 1
            std::vector<std::vector<Scalar>> m(n, std::vector<Scalar>(n, Scalar::zero(ring)));
            for (std::size_t i = 0; i < n; ++i) m[i][i] = Scalar::one(ring);
            for (int s = 0; s < 2 && n >= 2; ++s) {
                std::size_t i = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(n) - 1));
                std::size_t j = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(n) - 1));
                if (i == j) continue;
                long c = rng.uniform(-3, 3);
                // row_i += c * row_j
                for (std::size_t col = 0; col < n; ++col)
                    m[i][col] = m[i][col] + Scalar::of_int(c, ring) * m[j][col];
            }
            std::vector<Scalar> t;
            t.reserve(n);
            for (std::size_t i = 0; i < n; ++i)
                t.push_back(Scalar::of_int(rng.uniform(-3, 3), ring));
            recipe.factors.push_back(AffineFactor{std::move(m), std::move(t)});
        }
    }
    return {apply_recipe(recipe, ring, vars), recipe};
}

bool is_injective_on_points(const PolyMap& F, std::uint64_t cap) {
    if (F.ring().kind() != RingKind::PrimeField)
        throw error("is_injective_on_points requires a prime field map");
    if (F.params() != 0) throw error("is_injective_on_points: map has parameters");
    const std::uint64_t p = F.ring().modulus();
    const std::size_t n = F.n();
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (total > cap / p) throw budget_exceeded("point enumeration cap exceeded");
        total *= p;
    }
    if (total > cap) throw budget_exceeded("point enumeration cap exceeded");

    std::vector<bool> seen(total, false);
    std::vector<Scalar> point(n, Scalar::zero(F.ring()));
    std::vector<std::uint64_t> odo(n, 0);
    for (std::uint64_t count = 0; count < total; ++count) {
        auto image = F.apply(point);
        std::uint64_t code = 0;
        for (std::size_t i = 0; i < n; ++i) code = code * p + image[i].residue_value();
        if (seen[code]) return false;
        seen[code] = true;
        // advance odometer
        for (std::size_t i = 0; i < n; ++i) {
            if (++odo[i] < p) {
                point[i] = Scalar::residue(Integer(static_cast<unsigned long>(odo[i])), F.ring());
                break;
            }
            odo[i] = 0;
            point[i] = Scalar::zero(F.ring());
        }
    }
    return true;
}

} // namespace keller
