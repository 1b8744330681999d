#include "rainbow/multilinear.hpp"

#include <algorithm>
#include <random>

namespace rainbow {

FieldVector FieldVector::basis(std::size_t dim, std::size_t s) {
    FieldVector v;
    v.coords.assign(dim, 0);
    v.coords.at(s) = 1;
    return v;
}

FieldVector combine(const PrimeField& f, std::uint64_t a, const FieldVector& u, std::uint64_t b, const FieldVector& v) {
    if (u.dim() != v.dim()) throw DomainError("combine: dimension mismatch");
    FieldVector out;
    out.coords.resize(u.dim());
    for (std::size_t i = 0; i < u.dim(); ++i) out.coords[i] = f.add(f.mul(a, u.coords[i]), f.mul(b, v.coords[i]));
    return out;
}

namespace {

FieldVector random_vector(std::mt19937_64& rng, std::size_t dim, std::uint64_t q) {
    std::uniform_int_distribution<std::uint64_t> dist(0, q - 1);
    FieldVector v;
    v.coords.resize(dim);
    for (auto& c : v.coords) c = dist(rng);
    return v;
}

void require_shape(std::size_t t, std::size_t dim, std::span<const FieldVector> xs) {
    if (xs.size() != t) throw DomainError("multilinear form: expected " + std::to_string(t) + " arguments");
    for (const auto& x : xs)
        if (x.dim() != dim) throw DomainError("multilinear form: argument has wrong dimension");
}

} // namespace

MultilinearForm diagonal_form(const PrimeField& f, std::size_t t, std::size_t dim) {
    MultilinearForm form;
    form.t = t;
    form.dim = dim;
    form.eval = [f, t, dim](std::span<const FieldVector> xs) {
        require_shape(t, dim, xs);
        std::uint64_t sum = 0;
        for (std::size_t s = 0; s < dim; ++s) {
            std::uint64_t prod = 1;
            for (const auto& x : xs) prod = f.mul(prod, x.coords[s]);
            sum = f.add(sum, prod);
        }
        return sum;
    };
    return form;
}

MultilinearForm random_form(const PrimeField& f, std::size_t t, std::size_t dim, std::uint64_t seed) {
    std::size_t terms = 1;
    for (std::size_t i = 0; i < t; ++i) {
        if (terms > (std::size_t{1} << 24U) / std::max<std::size_t>(dim, 1))
            throw DomainError("random_form: dim^t too large to tabulate");
        terms *= dim;
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> dist(0, f.modulus() - 1);
    std::vector<std::uint64_t> coeff(terms);
    for (auto& c : coeff) c = dist(rng);

    MultilinearForm form;
    form.t = t;
    form.dim = dim;
    form.eval = [f, t, dim, coeff = std::move(coeff)](std::span<const FieldVector> xs) {
        require_shape(t, dim, xs);
        // Horner over the positions: partial[s_1..s_i] accumulates the last t-i factors.
        std::vector<std::uint64_t> acc(coeff);
        std::size_t width = acc.size();
        for (std::size_t i = t; i-- > 0;) {
            width /= dim;
            std::vector<std::uint64_t> next(width, 0);
            for (std::size_t p = 0; p < width; ++p)
                for (std::size_t s = 0; s < dim; ++s)
                    next[p] = f.add(next[p], f.mul(acc[p * dim + s], xs[i].coords[s]));
            acc = std::move(next);
        }
        return acc.empty() ? 0 : acc[0];
    };
    return form;
}

bool spot_check_multilinear(const PrimeField& f, const MultilinearForm& form, std::size_t probes, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> scalar(0, f.modulus() - 1);
    for (std::size_t p = 0; p < probes; ++p) {
        std::vector<FieldVector> xs;
        for (std::size_t i = 0; i < form.t; ++i) xs.push_back(random_vector(rng, form.dim, f.modulus()));
        const std::size_t pos = rng() % form.t;
        const FieldVector u = random_vector(rng, form.dim, f.modulus());
        const FieldVector v = random_vector(rng, form.dim, f.modulus());
        const std::uint64_t a = scalar(rng);
        const std::uint64_t b = scalar(rng);
        xs[pos] = combine(f, a, u, b, v);
        const std::uint64_t lhs = form.eval(xs);
        xs[pos] = u;
        const std::uint64_t fu = form.eval(xs);
        xs[pos] = v;
        const std::uint64_t fv = form.eval(xs);
        if (lhs != f.add(f.mul(a, fu), f.mul(b, fv))) return false;
    }
    return true;
}

void check_tuple_family(const TupleFamily& fam, const PhiOracle& phi) {
    if (fam.t != phi.t) throw DomainError("tuple family: t does not match the oracle");
    for (std::size_t j = 0; j < fam.tuples.size(); ++j) {
        if (fam.tuples[j].size() != fam.t)
            throw DomainError("tuple family: tuple " + std::to_string(j) + " does not have t entries");
        if (!fam.elements.empty())
            for (auto id : fam.tuples[j])
                if (id >= fam.elements.size()) throw DomainError("tuple family: element id out of range");
        if (phi.eval(fam.tuples[j]) == 0)
            throw DomainError("tuple family: phi vanishes on tuple " + std::to_string(j));
    }
}

PhiOracle explicit_oracle(const PrimeField& f, MultilinearForm form, const TupleFamily& fam) {
    PhiOracle phi;
    phi.modulus = f.modulus();
    phi.t = form.t;
    phi.eval = [form, elements = fam.elements](std::span<const std::size_t> ids) {
        std::vector<FieldVector> xs;
        xs.reserve(ids.size());
        for (auto id : ids) xs.push_back(elements.at(id));
        return form.eval(xs);
    };
    phi.linearity_probe = [f, form](std::uint64_t seed) { return spot_check_multilinear(f, form, 32, seed); };
    return phi;
}

ExplicitProblem tightness_family(std::size_t t, std::size_t dim, std::uint64_t q) {
    if (t < 2 || dim < 1) throw DomainError("tightness_family: requires t >= 2 and dim >= 1");
    const PrimeField f(q);
    ExplicitProblem out;
    out.family.t = t;
    out.family.dim = dim;
    for (std::size_t s = 0; s < dim; ++s) out.family.elements.push_back(FieldVector::basis(dim, s));
    for (std::size_t s = 0; s < dim; ++s)
        for (std::size_t c = 0; c + 1 < t; ++c) out.family.tuples.emplace_back(t, s);
    out.phi = explicit_oracle(f, diagonal_form(f, t, dim), out.family);
    check_tuple_family(out.family, out.phi);
    return out;
}

ExplicitProblem random_family(std::size_t t, std::size_t dim, std::size_t N, std::uint64_t seed, std::uint64_t q) {
    if (t < 1 || dim < 1) throw DomainError("random_family: requires t >= 1 and dim >= 1");
    const PrimeField f(q);
    std::mt19937_64 rng(seed);
    MultilinearForm form = random_form(f, t, dim, rng());
    ExplicitProblem out;
    out.family.t = t;
    out.family.dim = dim;
    for (std::size_t j = 0; j < N; ++j) {
        std::vector<FieldVector> xs;
        for (std::size_t attempt = 0;; ++attempt) {
            if (attempt == 64) throw DomainError("random_family: form vanishes on every sampled tuple");
            xs.clear();
            for (std::size_t i = 0; i < t; ++i) xs.push_back(random_vector(rng, dim, q));
            if (form.eval(xs) != 0) break;
        }
        std::vector<std::size_t> ids;
        for (auto& x : xs) {
            ids.push_back(out.family.elements.size());
            out.family.elements.push_back(std::move(x));
        }
        out.family.tuples.push_back(std::move(ids));
    }
    out.phi = explicit_oracle(f, form, out.family);
    check_tuple_family(out.family, out.phi);
    return out;
}

std::string to_string(MultilinearStatus s) { return s == MultilinearStatus::Found ? "Found" : "Exhausted"; }

namespace {

struct BudgetExceeded {};

class InductiveSearch {
public:
    InductiveSearch(const TupleFamily& fam, const PhiOracle& phi, const MultilinearOptions& opts)
        : fam_(fam), phi_(phi), opts_(opts), field_(phi.modulus) {}

    std::optional<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> solve(std::vector<std::size_t> pool) {
        const std::size_t t = fam_.t;
        while (!pool.empty()) {
            const std::size_t top = pool.back();
            std::vector<std::size_t> js(t, top);
            std::vector<std::size_t> ks(t);
            for (std::size_t i = 0; i < t; ++i) ks[i] = i;

            std::vector<std::size_t> rest;
            while (true) {
                const auto ell = static_cast<std::size_t>(std::count(js.begin(), js.end(), top));
                if (ell <= 1) return std::make_pair(js, ks);
                rest.clear();
                for (auto j : pool)
                    if (j != top && std::find(js.begin(), js.end(), j) == js.end()) rest.push_back(j);
                if (!trade(js, ks, top, rest)) break;
                ++rewrites;
            }
            ++recursions;
            pool = std::move(rest);
        }
        return std::nullopt;
    }

    std::uint64_t evaluations = 0;
    std::size_t rewrites = 0;
    std::size_t recursions = 0;

private:
    std::uint64_t phi_of(const std::vector<std::size_t>& js, const std::vector<std::size_t>& ks) {
        if (evaluations >= opts_.max_evaluations) throw BudgetExceeded{};
        ++evaluations;
        std::vector<std::size_t> ids(js.size());
        for (std::size_t i = 0; i < js.size(); ++i) ids[i] = fam_.tuples[js[i]][ks[i]];
        return phi_.eval(ids);
    }

    bool trade(std::vector<std::size_t>& js, std::vector<std::size_t>& ks, std::size_t top,
               const std::vector<std::size_t>& rest) {
        for (std::size_t i = 0; i < js.size(); ++i) {
            if (js[i] != top) continue;
            const std::size_t old_j = js[i];
            const std::size_t old_k = ks[i];
            for (auto j : rest)
                for (std::size_t k = 0; k < fam_.t; ++k) {
                    js[i] = j;
                    ks[i] = k;
                    if (phi_of(js, ks) != 0) return true;
                }
            js[i] = old_j;
            ks[i] = old_k;
            if (opts_.verify_span && !fam_.elements.empty() && in_span(fam_.tuples[old_j][old_k], rest))
                throw std::logic_error("multilinear_rainbow_find: y lies in the span of the pool but no trade exists; "
                                       "phi is not multilinear");
        }
        return false;
    }

    bool in_span(std::size_t element, const std::vector<std::size_t>& rest) const {
        std::vector<std::vector<std::uint64_t>> rows;
        for (auto j : rest)
            for (auto id : fam_.tuples[j]) rows.push_back(fam_.elements[id].coords);
        if (rows.empty()) return std::all_of(fam_.elements[element].coords.begin(), fam_.elements[element].coords.end(),
                                             [](std::uint64_t c) { return c == 0; });
        const std::size_t before = field_.rank(rows);
        rows.push_back(fam_.elements[element].coords);
        return field_.rank(std::move(rows)) == before;
    }

    const TupleFamily& fam_;
    const PhiOracle& phi_;
    const MultilinearOptions& opts_;
    PrimeField field_;
};

} // namespace

MultilinearResult multilinear_rainbow_find(const TupleFamily& fam, const PhiOracle& phi, const MultilinearOptions& opts) {
    if (fam.t == 0 || fam.t != phi.t) throw DomainError("multilinear_rainbow_find: t mismatch");
    MultilinearResult res;
    std::vector<std::size_t> pool(fam.tuples.size());
    for (std::size_t j = 0; j < pool.size(); ++j) pool[j] = j;
    InductiveSearch search(fam, phi, opts);
    std::optional<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> found;
    try {
        found = search.solve(std::move(pool));
    } catch (const BudgetExceeded&) {
        res.budget_hit = true;
    }
    res.evaluations = search.evaluations;
    res.rewrites = search.rewrites;
    res.recursions = search.recursions;
    if (!found) return res;

    auto [js, ks] = std::move(*found);
    std::vector<std::size_t> sorted = js;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::logic_error("multilinear_rainbow_find: indices are not distinct");
    std::vector<std::size_t> ids(fam.t);
    for (std::size_t i = 0; i < fam.t; ++i) ids[i] = fam.tuples[js[i]][ks[i]];
    if (phi.eval(ids) == 0) throw std::logic_error("multilinear_rainbow_find: phi vanishes on the selection");
    res.status = MultilinearStatus::Found;
    res.indices = std::move(js);
    res.choices = std::move(ks);
    return res;
}

namespace {

bool subsets_nonsingular(const std::vector<FieldVector>& vs, std::size_t dim, const PrimeField& f) {
    const std::size_t M = vs.size();
    if (M < dim) return true;
    std::vector<std::size_t> idx(dim);
    for (std::size_t i = 0; i < dim; ++i) idx[i] = i;
    while (true) {
        std::vector<std::vector<std::uint64_t>> m;
        m.reserve(dim);
        for (auto i : idx) m.push_back(vs[i].coords);
        if (f.determinant(std::move(m)) == 0) return false;
        std::size_t i = dim;
        while (i > 0 && idx[i - 1] == M - dim + i - 1) --i;
        if (i == 0) return true;
        ++idx[i - 1];
        for (std::size_t k = i; k < dim; ++k) idx[k] = idx[k - 1] + 1;
    }
}

std::uint64_t binomial_capped(std::size_t n, std::size_t k, std::uint64_t cap) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    uint128 c = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        c = c * (n - k + i) / i;
        if (c > cap) return cap + 1;
    }
    return static_cast<std::uint64_t>(c);
}

} // namespace

std::vector<FieldVector> general_position_vectors(std::size_t M, std::size_t dim, std::uint64_t seed,
                                                  const GeneralPositionOptions& opts) {
    if (dim == 0 || M < dim) throw DomainError("general_position_vectors: requires M >= dim >= 1");
    const PrimeField f(opts.q);
    const bool exhaustive = binomial_capped(M, dim, opts.exhaustive_limit) <= opts.exhaustive_limit;
    for (std::size_t attempt = 0; attempt <= opts.retries; ++attempt) {
        std::mt19937_64 rng(seed + attempt * 0x9E3779B97F4A7C15ULL);
        std::vector<FieldVector> vs;
        vs.reserve(M);
        for (std::size_t i = 0; i < M; ++i) vs.push_back(random_vector(rng, dim, opts.q));
        bool ok = true;
        if (exhaustive) {
            ok = subsets_nonsingular(vs, dim, f);
        } else {
            std::vector<std::vector<std::uint64_t>> m;
            for (std::size_t i = 0; i < dim; ++i) m.push_back(vs[i].coords);
            ok = f.determinant(std::move(m)) != 0;
        }
        if (ok) return vs;
    }
    throw GeneralPositionError("general_position_vectors: no general-position sample after " +
                               std::to_string(opts.retries) + " retries (M=" + std::to_string(M) +
                               ", dim=" + std::to_string(dim) + ", q=" + std::to_string(opts.q) + ")");
}

bool in_general_position(const std::vector<FieldVector>& vs, const PrimeField& f) {
    if (vs.empty()) return true;
    return subsets_nonsingular(vs, vs.front().dim(), f);
}

} // namespace rainbow
