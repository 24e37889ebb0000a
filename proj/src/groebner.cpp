#include "keller/groebner.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "keller/parse.hpp"

namespace keller {

namespace {

// Engine-internal form: terms sorted descending under the active order,
// integer coefficients (primitive for Q ideals, residues in [0,p) for F_p).
struct ITerm {
    Monomial m;
    Integer c;
};
using IPoly = std::vector<ITerm>;

struct FieldCtx {
    bool modular = false;
    Integer p = 0;
    MonomialOrder order = MonomialOrder::GradedReverseLex;

    Integer mod(const Integer& v) const {
        Integer r = v % p;
        if (r < 0) r += p;
        return r;
    }
    Integer inv_mod(const Integer& v) const {
        Integer r;
        if (mpz_invert(r.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t()) == 0)
            throw division_error("no inverse mod p");
        return r;
    }
};

void sort_desc(IPoly& f, MonomialOrder order) {
    std::sort(f.begin(), f.end(),
              [order](const ITerm& x, const ITerm& y) { return compare(x.m, y.m, order) > 0; });
}

Integer int_content(const IPoly& f, std::size_t from = 0) {
    Integer g = 0;
    for (std::size_t i = from; i < f.size(); ++i) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), f[i].c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

/// Divide out integer content; make the leading coefficient positive.
void make_primitive(IPoly& f) {
    if (f.empty()) return;
    Integer g = int_content(f);
    if (f.front().c < 0) g = -g;
    if (g != 1)
        for (auto& t : f) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), g.get_mpz_t());
}

void make_monic_mod(IPoly& f, const FieldCtx& ctx) {
    if (f.empty()) return;
    if (f.front().c == 1) return;
    Integer s = ctx.inv_mod(f.front().c);
    for (auto& t : f) t.c = ctx.mod(t.c * s);
}

void normalize(IPoly& f, const FieldCtx& ctx) {
    if (ctx.modular)
        make_monic_mod(f, ctx);
    else
        make_primitive(f);
}

/// r = a*f - b*(u * g); f given as a suffix span, both sorted descending.
IPoly combine(std::span<const ITerm> f, const Integer& a, const IPoly& g, const Integer& b,
              const Monomial& u, const FieldCtx& ctx) {
    IPoly r;
    r.reserve(f.size() + g.size());
    std::size_t i = 0, j = 0;
    while (i < f.size() || j < g.size()) {
        int cmp;
        if (i >= f.size())
            cmp = -1;
        else if (j >= g.size())
            cmp = 1;
        else
            cmp = compare(f[i].m, g[j].m * u, ctx.order);
        if (cmp > 0) {
            Integer c = a == 1 ? f[i].c : Integer(f[i].c * a);
            if (ctx.modular) c = ctx.mod(c);
            if (c != 0) r.push_back({f[i].m, std::move(c)});
            ++i;
        } else if (cmp < 0) {
            Integer c = -(g[j].c * b);
            if (ctx.modular) c = ctx.mod(c);
            if (c != 0) r.push_back({g[j].m * u, std::move(c)});
            ++j;
        } else {
            Integer c = f[i].c * a - g[j].c * b;
            if (ctx.modular) c = ctx.mod(c);
            if (c != 0) r.push_back({f[i].m, std::move(c)});
            ++i;
            ++j;
        }
    }
    return r;
}

/// Full division h -> (done, scale) with h == done/scale modulo the divisors.
/// Fraction-free over Q: coefficients stay integral, scale absorbs the
/// cross-multipliers and content strips.
struct Reduced {
    IPoly done;
    Rational scale; // result value = done / scale
};

Reduced reduce_full(IPoly h, const std::vector<const IPoly*>& divisors, const FieldCtx& ctx) {
    Reduced out;
    out.scale = 1;
    std::size_t head = 0;
    int steps = 0;
    while (head < h.size()) {
        const Monomial& m = h[head].m;
        const IPoly* g = nullptr;
        for (const IPoly* cand : divisors) {
            if (!cand->empty() && cand->front().m.divides(m)) {
                g = cand;
                break;
            }
        }
        if (!g) {
            out.done.push_back(std::move(h[head]));
            ++head;
            continue;
        }
        Monomial u = m.divide_by(g->front().m);
        Integer a, b;
        if (ctx.modular) {
            a = 1;
            b = ctx.mod(h[head].c * ctx.inv_mod(g->front().c));
        } else {
            Integer d;
            mpz_gcd(d.get_mpz_t(), h[head].c.get_mpz_t(), g->front().c.get_mpz_t());
            a = g->front().c / d;
            b = h[head].c / d;
            if (a < 0) {
                a = -a;
                b = -b;
            }
        }
        h = combine(std::span<const ITerm>(h.data() + head, h.size() - head), a, *g, b, u, ctx);
        head = 0;
        if (!ctx.modular && a != 1) {
            for (auto& t : out.done) t.c *= a;
            out.scale *= Rational(a);
        }
        if (!ctx.modular && ++steps % 32 == 0 && !(h.empty() && out.done.empty())) {
            Integer gc = int_content(h);
            Integer gd = int_content(out.done);
            Integer j;
            mpz_gcd(j.get_mpz_t(), gc.get_mpz_t(), gd.get_mpz_t());
            if (j > 1) {
                for (auto& t : h) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), j.get_mpz_t());
                for (auto& t : out.done) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), j.get_mpz_t());
                out.scale /= Rational(j);
            }
        }
    }
    return out;
}

IPoly s_polynomial(const IPoly& f, const IPoly& g, const FieldCtx& ctx) {
    Monomial tau = Monomial::lcm(f.front().m, g.front().m);
    Monomial uf = tau.divide_by(f.front().m);
    Monomial ug = tau.divide_by(g.front().m);
    IPoly shifted;
    shifted.reserve(f.size());
    for (const auto& t : f) shifted.push_back({t.m * uf, t.c});
    Integer a, b;
    if (ctx.modular) {
        a = 1;
        b = ctx.mod(f.front().c * ctx.inv_mod(g.front().c));
    } else {
        Integer d;
        mpz_gcd(d.get_mpz_t(), f.front().c.get_mpz_t(), g.front().c.get_mpz_t());
        a = g.front().c / d;
        b = f.front().c / d;
    }
    if (a != 1)
        for (auto& t : shifted) {
            t.c *= a;
            if (ctx.modular) t.c = ctx.mod(t.c);
        }
    return combine(shifted, Integer(1), g, b, ug, ctx);
}

IPoly to_internal(const Polynomial& f, const FieldCtx& ctx) {
    IPoly r;
    if (f.is_zero()) return r;
    if (ctx.modular) {
        for (const auto& [m, c] : f.terms()) r.push_back({m, c.integer_value()});
    } else {
        IntegerNormalForm nf = integer_normalize(f);
        for (const auto& [m, c] : nf.primitive.terms()) r.push_back({m, c.integer_value()});
    }
    sort_desc(r, ctx.order);
    return r;
}

Polynomial from_internal(const IPoly& f, const Rational& inv_scale, const Ring& ring,
                         const VarsPtr& vars) {
    Polynomial r(ring, vars);
    for (const auto& t : f) {
        if (ring.kind() == RingKind::PrimeField)
            r.add_term(t.m, Scalar::residue(t.c, ring));
        else
            r.add_term(t.m, Scalar::rational(Rational(t.c) * inv_scale));
    }
    return r;
}

struct PendingPair {
    Monomial lcm;
    std::size_t i, j;
};

struct PairLess {
    MonomialOrder order;
    bool operator()(const PendingPair& a, const PendingPair& b) const {
        int c = compare(a.lcm, b.lcm, order);
        if (c != 0) return c < 0;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    }
};

/// Gebauer-Moeller pair update: installs element hi into the basis, creating
/// the new pairs that survive the coprimality and chain criteria and pruning
/// dominated old pairs.
void gm_update(std::vector<IPoly>& all, std::vector<char>& alive,
               std::set<PendingPair, PairLess>& pending, std::size_t hi) {
    const Monomial& hm = all[hi].front().m;
    struct Cand {
        std::size_t g;
        Monomial lcm;
        bool coprime;
        bool keep = false;
    };
    std::vector<Cand> cands;
    for (std::size_t g = 0; g < all.size(); ++g)
        if (alive[g] && g != hi)
            cands.push_back({g, Monomial::lcm(hm, all[g].front().m),
                             hm.coprime_with(all[g].front().m)});

    for (std::size_t k = 0; k < cands.size(); ++k) {
        bool dominated = false;
        if (!cands[k].coprime) {
            for (std::size_t l = 0; l < cands.size(); ++l) {
                if (l == k) continue;
                bool pending_or_kept = l > k || cands[l].keep;
                if (pending_or_kept && cands[l].lcm.divides(cands[k].lcm)) {
                    dominated = true;
                    break;
                }
            }
        }
        cands[k].keep = cands[k].coprime || !dominated;
    }

    // prune old pairs strictly dominated by h
    for (auto it = pending.begin(); it != pending.end();) {
        const auto& pr = *it;
        if (hm.divides(pr.lcm) && Monomial::lcm(all[pr.i].front().m, hm) != pr.lcm &&
            Monomial::lcm(hm, all[pr.j].front().m) != pr.lcm)
            it = pending.erase(it);
        else
            ++it;
    }
    for (const auto& c : cands)
        if (c.keep && !c.coprime)
            pending.insert({c.lcm, std::min(c.g, hi), std::max(c.g, hi)});

    // retire basis elements whose leading monomial h divides
    for (std::size_t g = 0; g < all.size(); ++g)
        if (alive[g] && g != hi && hm.divides(all[g].front().m)) alive[g] = 0;
    alive[hi] = 1;
}

std::vector<const IPoly*> alive_divisors(const std::vector<IPoly>& all,
                                         const std::vector<char>& alive) {
    std::vector<const IPoly*> d;
    for (std::size_t i = 0; i < all.size(); ++i)
        if (alive[i]) d.push_back(&all[i]);
    return d;
}

std::uint64_t fnv1a(std::string_view s, std::uint64_t h = 0xcbf29ce484222325ULL) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[i] = digits[v & 0xf];
        v >>= 4;
    }
    return s;
}

} // namespace

std::string groebner_cache_key(std::span<const Polynomial> gens, MonomialOrder order) {
    if (gens.empty()) return hex64(fnv1a("empty"));
    std::vector<std::string> lines;
    lines.reserve(gens.size());
    for (const auto& g : gens) lines.push_back(format_polynomial(g));
    std::sort(lines.begin(), lines.end());
    std::string blob = "v1|" + gens[0].ring().to_string() + "|" + order_name(order) + "|";
    for (const auto& n : gens[0].vars()->names()) blob += n + ",";
    blob += "|";
    for (const auto& l : lines) blob += l + ";";
    return hex64(fnv1a(blob));
}

std::filesystem::path groebner_cache_dir(const GroebnerOptions& opts) {
    if (opts.cache_dir) return *opts.cache_dir;
    if (const char* env = std::getenv("KELLER_CACHE_DIR")) return std::filesystem::path(env);
    return std::filesystem::path(".keller-cache");
}

std::vector<Polynomial> groebner_basis(std::span<const Polynomial> gens, MonomialOrder order,
                                       const GroebnerOptions& opts) {
    if (gens.empty()) return {};
    const Ring ring = gens[0].ring();
    const VarsPtr vars = gens[0].vars();
    if (!ring.is_field()) throw error("groebner_basis requires field coefficients");
    for (const auto& g : gens)
        if (g.ring() != ring || !(*g.vars() == *vars))
            throw ring_mismatch_error("groebner_basis: mixed rings/variables");

    std::filesystem::path cache_file;
    std::string key;
    if (opts.use_cache) {
        key = groebner_cache_key(gens, order);
        cache_file = groebner_cache_dir(opts) / (key + ".gb");
        std::ifstream in(cache_file);
        if (in) {
            std::string line;
            bool ok = std::getline(in, line) && line == "keller-gb v1";
            ok = ok && std::getline(in, line) && line == ring.to_string() + " " + order_name(order);
            std::string varline = "vars:";
            for (const auto& n : vars->names()) varline += " " + n;
            ok = ok && std::getline(in, line) && line == varline;
            ok = ok && std::getline(in, line) && line == "hash: " + key;
            std::size_t count = 0;
            if (ok && std::getline(in, line) && line.rfind("basis ", 0) == 0)
                count = std::stoul(line.substr(6));
            else
                ok = false;
            std::vector<Polynomial> basis;
            for (std::size_t i = 0; ok && i < count; ++i) {
                if (!std::getline(in, line))
                    ok = false;
                else
                    basis.push_back(parse_polynomial(line, vars, ring));
            }
            if (ok) return basis;
        }
    }

    FieldCtx ctx;
    ctx.order = order;
    if (ring.kind() == RingKind::PrimeField) {
        ctx.modular = true;
        ctx.p = Integer(static_cast<unsigned long>(ring.modulus()));
    }

    std::vector<IPoly> all;
    std::vector<char> alive;
    std::set<PendingPair, PairLess> pending{PairLess{order}};
    bool unit_found = false;

    auto install = [&](IPoly h) {
        if (h.empty()) return;
        normalize(h, ctx);
        if (h.front().m.is_constant()) {
            unit_found = true;
            return;
        }
        all.push_back(std::move(h));
        alive.push_back(0);
        gm_update(all, alive, pending, all.size() - 1);
    };

    for (const auto& g : gens) {
        if (unit_found) break;
        IPoly h = to_internal(g, ctx);
        if (h.empty()) continue;
        install(reduce_full(std::move(h), alive_divisors(all, alive), ctx).done);
    }

    std::size_t pairs_done = 0;
    while (!pending.empty() && !unit_found) {
        PendingPair pr = *pending.begin();
        pending.erase(pending.begin());
        IPoly s = s_polynomial(all[pr.i], all[pr.j], ctx);
        if (!s.empty()) install(reduce_full(std::move(s), alive_divisors(all, alive), ctx).done);
        ++pairs_done;
        if (opts.progress && pairs_done % 64 == 0)
            opts.progress({pairs_done, pending.size(), all.size()});
    }

    std::vector<Polynomial> basis;
    if (unit_found) {
        basis.push_back(Polynomial::constant(Scalar::one(ring), vars));
    } else {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < all.size(); ++i)
            if (alive[i]) idx.push_back(i);
        // minimal leading-monomial set
        std::vector<std::size_t> minimal;
        for (std::size_t i : idx) {
            bool redundant = false;
            for (std::size_t j : idx) {
                if (j == i) continue;
                const Monomial& mi = all[i].front().m;
                const Monomial& mj = all[j].front().m;
                if (mj == mi ? j < i : mj.divides(mi)) {
                    redundant = true;
                    break;
                }
            }
            if (!redundant) minimal.push_back(i);
        }
        std::vector<Polynomial> rough;
        for (std::size_t i : minimal) rough.push_back(from_internal(all[i], Rational(1), ring, vars));
        std::sort(rough.begin(), rough.end(), [order](const Polynomial& a, const Polynomial& b) {
            return compare(a.leading_term(order).first, b.leading_term(order).first, order) < 0;
        });
        // tail interreduction; leading monomials are already pairwise irredundant
        for (std::size_t i = 0; i < rough.size(); ++i) {
            std::vector<Polynomial> others;
            others.reserve(rough.size() - 1);
            for (std::size_t j = 0; j < rough.size(); ++j)
                if (j != i) others.push_back(rough[j]);
            Polynomial nf = normal_form(rough[i], others, order);
            const auto& lc = nf.leading_term(order).second;
            basis.push_back(nf.scaled(lc.inv()));
        }
    }

    if (opts.use_cache) {
        std::error_code ec;
        std::filesystem::create_directories(groebner_cache_dir(opts), ec);
        std::ofstream out(cache_file);
        if (out) {
            out << "keller-gb v1\n" << ring.to_string() << " " << order_name(order) << "\n";
            out << "vars:";
            for (const auto& n : vars->names()) out << " " << n;
            out << "\nhash: " << key << "\n";
            out << "basis " << basis.size() << "\n";
            for (const auto& b : basis) out << format_polynomial(b) << "\n";
        }
    }
    return basis;
}

Polynomial normal_form(const Polynomial& f, std::span<const Polynomial> basis,
                       MonomialOrder order) {
    if (!f.ring().is_field()) throw error("normal_form requires field coefficients");
    if (f.is_zero()) return f;
    FieldCtx ctx;
    ctx.order = order;
    if (f.ring().kind() == RingKind::PrimeField) {
        ctx.modular = true;
        ctx.p = Integer(static_cast<unsigned long>(f.ring().modulus()));
    }
    Rational pre_scale = 1;
    IPoly h;
    if (ctx.modular) {
        for (const auto& [m, c] : f.terms()) h.push_back({m, c.integer_value()});
    } else {
        IntegerNormalForm nf = integer_normalize(f);
        pre_scale = Rational(nf.content, nf.denominator_lcm);
        for (const auto& [m, c] : nf.primitive.terms()) h.push_back({m, c.integer_value()});
    }
    sort_desc(h, order);

    std::vector<IPoly> divs;
    divs.reserve(basis.size());
    for (const auto& g : basis)
        if (!g.is_zero()) divs.push_back(to_internal(g, ctx));
    for (auto& d : divs) normalize(d, ctx);
    std::vector<const IPoly*> ptrs;
    for (auto& d : divs) ptrs.push_back(&d);

    Reduced r = reduce_full(std::move(h), ptrs, ctx);
    Rational inv_scale = ctx.modular ? Rational(1) : Rational(pre_scale / r.scale);
    return from_internal(r.done, inv_scale, f.ring(), f.vars());
}

Ideal::Ideal(std::vector<Polynomial> generators) : gens_(std::move(generators)) {
    if (gens_.empty()) throw error("Ideal needs at least one generator (possibly zero)");
    for (const auto& g : gens_)
        if (g.ring() != gens_[0].ring() || !(*g.vars() == *gens_[0].vars()))
            throw ring_mismatch_error("Ideal: mixed rings/variables");
}

const std::vector<Polynomial>& Ideal::groebner(MonomialOrder order,
                                               const GroebnerOptions& opts) const {
    auto it = cache_.find(order);
    if (it != cache_.end()) return it->second;
    auto basis = groebner_basis(gens_, order, opts);
    return cache_.emplace(order, std::move(basis)).first->second;
}

Polynomial Ideal::reduce(const Polynomial& f, MonomialOrder order,
                         const GroebnerOptions& opts) const {
    return normal_form(f, groebner(order, opts), order);
}

bool Ideal::contains(const Polynomial& f, MonomialOrder order,
                     const GroebnerOptions& opts) const {
    return reduce(f, order, opts).is_zero();
}

bool Ideal::radical_contains(const Polynomial& f, const GroebnerOptions& opts) const {
    const Ring& ring = gens_[0].ring();
    const VarsPtr& vars = gens_[0].vars();
    std::string tname = "t";
    while (vars->index_of(tname)) tname = "_" + tname;
    std::vector<std::string> names = vars->names();
    names.push_back(tname);
    VarsPtr ext = make_vars(std::move(names));
    std::vector<std::size_t> where(vars->size());
    for (std::size_t i = 0; i < vars->size(); ++i) where[i] = i;

    std::vector<Polynomial> egens;
    for (const auto& g : gens_) egens.push_back(reindex_variables(g, ext, where));
    Polynomial t = Polynomial::variable(ring, ext, ext->size() - 1);
    Polynomial one = Polynomial::constant(Scalar::one(ring), ext);
    egens.push_back(one - t * reindex_variables(f, ext, where));

    auto basis = groebner_basis(egens, MonomialOrder::GradedReverseLex, opts);
    return basis.size() == 1 && basis[0].is_one();
}

} // namespace keller
