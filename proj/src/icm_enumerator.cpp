#include "avcyc/icm_enumerator.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include <gmpxx.h>

#include "avcyc/short_vectors.hpp"

namespace avcyc {

const char* to_string(Completeness c) { return c == Completeness::certified ? "certified" : "heuristic"; }

namespace {

const char* kPi =
    "3.14159265358979323846264338327950288419716939937510582097494459230781640628620899863";

// (2g)!/(2g)^{2g} (4/pi)^g * num / sqrt(den), floored.
Int minkowski_floor(std::size_t n, const Int& num, const Int& den) {
  const unsigned prec = 512;
  mpf_class pi(kPi, prec);
  mpf_class c(1, prec);
  for (std::size_t i = 1; i <= n; ++i) c *= static_cast<unsigned long>(i);
  for (std::size_t i = 0; i < n; ++i) c /= static_cast<unsigned long>(n);
  for (std::size_t i = 0; i < n / 2; ++i) c = c * 4 / pi;
  mpf_class v = c * mpf_class(num, prec) / sqrt(mpf_class(den, prec));
  mpf_class fl = floor(v);
  return Int(fl);
}

std::vector<FieldElement> ring_generators(const OrderDesc& o) {
  std::vector<FieldElement> g = o.generators;
  if (g.empty()) g = o.lattice.basis();
  return g;
}

// Row i: coordinates of x * o_i in the O basis.
IntMatrix action_in_basis(const IdealLattice& o, const FieldElement& x) {
  const std::size_t n = o.degree();
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    auto c = o.coordinates(o.basis_element(i) * x);
    if (!c) throw Error(ErrorCode::InvalidArgument, "generator does not preserve the order");
    for (std::size_t j = 0; j < n; ++j) m(i, j) = (*c)[j];
  }
  return m;
}

void for_each_diagonal(std::size_t n, long d, std::vector<long>& cur,
                       const std::function<void(const std::vector<long>&)>& fn) {
  if (cur.size() == n - 1) {
    cur.push_back(d);
    fn(cur);
    cur.pop_back();
    return;
  }
  for (long k = 1; k <= d; ++k) {
    if (d % k) continue;
    cur.push_back(k);
    for_each_diagonal(n, d / k, cur, fn);
    cur.pop_back();
  }
}

IdealLattice lattice_from_hnf(const IdealLattice& o, const IntMatrix& h) {
  RatMatrix rows = to_rational(h) * o.basis_matrix();
  return IdealLattice::from_rows(o.field(), rows);
}

bool in_row_hnf(const IntMatrix& h, std::vector<Int> v) {
  const std::size_t n = h.rows();
  for (std::size_t j = 0; j < n; ++j) {
    if (v[j] % h(j, j) != 0) return false;
    Int y = v[j] / h(j, j);
    if (y == 0) continue;
    for (std::size_t k = j; k < n; ++k) v[k] -= y * h(j, k);
  }
  return true;
}

bool exact_stable(const std::vector<IntMatrix>& gens, const IntMatrix& h) {
  for (const auto& g : gens) {
    IntMatrix img = h * g;
    for (std::size_t r = 0; r < h.rows(); ++r)
      if (!in_row_hnf(h, img.row(r))) return false;
  }
  return true;
}

}  // namespace

Int minkowski_bound(const OrderDesc& o) {
  Int disc = abs(discriminant(o));
  return minkowski_floor(o.lattice.degree(), disc, disc);
}

Int certified_index_bound(const OrderDesc& o) {
  const IdealLattice& ol = o.lattice;
  const std::size_t n = ol.degree();
  Int disc = abs(discriminant(o));
  IdealLattice dual = trace_dual(ol);
  IdealLattice l = ideal_quotient(ol, dual);
  auto basis = l.basis();
  const NumberField& k = *ol.field();
  RatMatrix gram(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) gram(i, j) = gram(j, i) = k.hermitian_trace(basis[i].coeffs(), basis[j].coeffs());
  IntMatrix t = lll_reduce(gram);
  std::vector<FieldElement> red;
  for (std::size_t i = 0; i < n; ++i) {
    FieldElement e = FieldElement::zero(ol.field());
    for (std::size_t j = 0; j < n; ++j)
      if (t(i, j) != 0) e = e + basis[j] * Rat(t(i, j));
    red.push_back(e);
  }
  Rat best = abs(red[0].norm());
  for (const auto& e : red) best = std::min(best, Rat(abs(e.norm())));
  RatMatrix rg = to_rational(t) * gram * to_rational(t).transpose();
  Rat radius = rg(0, 0) * 2;
  enumerate_short_vectors(
      rg, radius,
      [&](const std::vector<Int>& y, const Rat&) {
        FieldElement x = FieldElement::zero(ol.field());
        for (std::size_t i = 0; i < n; ++i)
          if (y[i] != 0) x = x + red[i] * Rat(y[i]);
        best = std::min(best, Rat(abs(x.norm())));
        return false;
      },
      200000);
  if (!is_integer(best)) throw Error(ErrorCode::Internal, "norm of an integral element is not an integer");
  return minkowski_floor(n, best.get_num(), disc);
}

std::vector<IdealLattice> ideals_of_index(const OrderDesc& o, const Int& d, kernel::StabilityFn fn,
                                          std::size_t* candidates) {
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "index must be positive");
  const IdealLattice& ol = o.lattice;
  const std::size_t n = ol.degree();
  std::vector<IntMatrix> gens;
  for (const auto& g : ring_generators(o)) gens.push_back(action_in_basis(ol, g));
  std::vector<IdealLattice> out;
  if (!fits_i64(d)) throw Error(ErrorCode::Capability, "index too large");
  const long dl = d.get_si();
  const bool fast = dl <= kernel::kMaxDeterminant && n <= kernel::kMaxDim;
  if (!fn) fn = kernel::select_stability_kernel();

  kernel::StabilityProblem prob;
  prob.n = n;
  prob.d = dl;
  for (const auto& g : gens) {
    std::vector<std::int32_t> gm(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) gm[i * n + j] = static_cast<std::int32_t>(mod_nonneg(g(i, j), d).get_si());
    prob.generators.push_back(std::move(gm));
  }

  std::vector<long> cur;
  for_each_diagonal(n, dl, cur, [&](const std::vector<long>& diag) {
    // free positions (i, j), i < j, ranging over [0, diag[j])
    std::vector<std::pair<std::size_t, std::size_t>> free;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < j; ++i)
        if (diag[j] > 1) free.emplace_back(i, j);
    std::vector<long> val(free.size(), 0);
    prob.diag.assign(diag.begin(), diag.end());

    std::vector<std::int32_t> block;
    std::vector<std::vector<long>> pending;
    auto flush = [&] {
      if (pending.empty()) return;
      if (candidates) *candidates += pending.size();
      const std::size_t blocks = (pending.size() + kernel::kLanes - 1) / kernel::kLanes;
      std::vector<std::vector<long>> padded = pending;
      while (padded.size() < blocks * kernel::kLanes) padded.push_back(pending.back());
      std::vector<std::uint8_t> ok(blocks * kernel::kLanes, 0);
      std::vector<IntMatrix> mats;
      for (const auto& vals : padded) {
        IntMatrix h(n, n);
        for (std::size_t i = 0; i < n; ++i) h(i, i) = diag[i];
        for (std::size_t f = 0; f < free.size(); ++f) h(free[f].first, free[f].second) = vals[f];
        mats.push_back(std::move(h));
      }
      if (fast) {
        block.assign(blocks * n * n * kernel::kLanes, 0);
        for (std::size_t c = 0; c < padded.size(); ++c) {
          std::size_t b = c / kernel::kLanes, lane = c % kernel::kLanes;
          for (std::size_t r = 0; r < n; ++r)
            for (std::size_t col = 0; col < n; ++col)
              block[((b * n * n) + r * n + col) * kernel::kLanes + lane] =
                  static_cast<std::int32_t>(mats[c](r, col).get_si());
        }
        fn(prob, block.data(), blocks, ok.data());
      } else {
        for (std::size_t c = 0; c < pending.size(); ++c) ok[c] = exact_stable(gens, mats[c]) ? 1 : 0;
      }
      for (std::size_t c = 0; c < pending.size(); ++c)
        if (ok[c]) out.push_back(lattice_from_hnf(ol, mats[c]));
      pending.clear();
    };
    while (true) {
      pending.push_back(val);
      if (pending.size() == 64 * kernel::kLanes) flush();
      std::size_t f = 0;
      for (; f < free.size(); ++f) {
        if (++val[f] < diag[free[f].second]) break;
        val[f] = 0;
      }
      if (f == free.size()) break;
    }
    flush();
  });
  std::sort(out.begin(), out.end());
  return out;
}

IcmResult enumerate_icm(const OrderDesc& o, const Int& index_bound, const IcmOptions& opts) {
  if (index_bound < 1) throw Error(ErrorCode::InvalidArgument, "index bound must be at least 1");
  IcmResult res;
  res.order = o;
  res.index_bound = index_bound;
  res.minkowski_bound = minkowski_bound(o);
  res.certified_bound = certified_index_bound(o);
  kernel::StabilityFn fn = opts.stability ? opts.stability : kernel::select_stability_kernel();
  res.stats.kernel = kernel::stability_kernel_name(fn);

  const IdealLattice& ol = o.lattice;
  const std::size_t n = ol.degree();
  FieldPtr k = ol.field();
  EquivalenceCache cache;
  std::map<std::string, std::size_t> seen;  // integral ideal key -> class
  bool all_definitive = true;

  auto seed = [&](std::size_t cls) {
    const IdealLattice& a = res.classes[cls].rep;
    IdealLattice c = ideal_quotient(ol, a);  // x with x a inside O
    Rat room = Rat(index_bound) / Rat(res.classes[cls].index);
    Rat radius = (n == 2) ? Rat(2 * room) : opts.seed_scale * static_cast<unsigned long>(n) * root_upper(room * room, n);
    auto cb = c.basis();
    RatMatrix gram(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) gram(i, j) = gram(j, i) = k->hermitian_trace(cb[i].coeffs(), cb[j].coeffs());
    IntMatrix t = lll_reduce(gram);
    std::vector<FieldElement> red;
    for (std::size_t i = 0; i < n; ++i) {
      FieldElement e = FieldElement::zero(k);
      for (std::size_t j = 0; j < n; ++j)
        if (t(i, j) != 0) e = e + cb[j] * Rat(t(i, j));
      red.push_back(e);
    }
    RatMatrix rg = to_rational(t) * gram * to_rational(t).transpose();
    enumerate_short_vectors(
        rg, radius,
        [&](const std::vector<Int>& y, const Rat&) {
          FieldElement x = FieldElement::zero(k);
          for (std::size_t i = 0; i < n; ++i)
            if (y[i] != 0) x = x + red[i] * Rat(y[i]);
          if (Rat(abs(x.norm())) > room) return false;
          seen.emplace(a.scaled(x).key(), cls);
          return false;
        },
        opts.equivalence.max_nodes);
  };

  for (Int d = 1; d <= index_bound; ++d) {
    std::size_t cand = 0;
    std::vector<IdealLattice> ideals = ideals_of_index(o, d, fn, &cand);
    res.stats.candidates += cand;
    res.stats.stable += ideals.size();
    for (const auto& s : ideals) {
      if (seen.count(s.key())) {
        ++res.stats.seeded_hits;
        continue;
      }
      // s = c s' with c = content in O-coordinates: s' has smaller index
      {
        RatMatrix coords = s.basis_matrix() * inverse(ol.basis_matrix());
        Int cont = 0;
        for (const auto& x : coords.data()) cont = gcd(cont, x.get_num());
        if (cont > 1) {
          IdealLattice smaller = s.scaled(Rat(1, cont));
          auto it = seen.find(smaller.key());
          if (it != seen.end()) {
            seen.emplace(s.key(), it->second);
            ++res.stats.seeded_hits;
            continue;
          }
        }
      }
      OrderDesc ring = multiplicator_ring(s);
      std::optional<std::size_t> match;
      std::vector<std::pair<std::size_t, std::string>> unsure;
      for (std::size_t c = 0; c < res.classes.size() && !match; ++c) {
        if (res.classes[c].multiplicator_ring.lattice != ring.lattice) continue;
        ++res.stats.equivalence_calls;
        EquivalenceResult e = ideal_equivalent(res.classes[c].rep, s, opts.equivalence, &cache);
        if (e.status == Equivalence::equivalent) match = c;
        else if (e.status == Equivalence::indeterminate) unsure.emplace_back(c, e.note);
      }
      if (match) {
        seen.emplace(s.key(), *match);
        continue;
      }
      for (auto& [c, note] : unsure) {
        all_definitive = false;
        res.indeterminate.push_back({c, s, note});
      }
      res.classes.push_back(IcmClass{s, ring, d});
      seen.emplace(s.key(), res.classes.size() - 1);
      seed(res.classes.size() - 1);
    }
  }
  // stable presentation order; class indices in `indeterminate` refer to it
  std::vector<std::size_t> order(res.classes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (res.classes[a].index != res.classes[b].index) return res.classes[a].index < res.classes[b].index;
    return res.classes[a].rep < res.classes[b].rep;
  });
  std::vector<std::size_t> where(order.size());
  std::vector<IcmClass> sorted;
  for (std::size_t i = 0; i < order.size(); ++i) {
    where[order[i]] = i;
    sorted.push_back(res.classes[order[i]]);
  }
  res.classes = std::move(sorted);
  for (auto& p : res.indeterminate) p.class_index = where[p.class_index];
  res.completeness = (all_definitive && index_bound >= res.certified_bound) ? Completeness::certified
                                                                            : Completeness::heuristic;
  return res;
}

FieldElement sigma_element(const FieldPtr& field, const Int& ell) {
  Int f1 = poly::eval(field->modulus(), Int(1));
  FieldElement one_minus = FieldElement::one(field) - FieldElement::alpha(field);
  Rat scale(f1, ell);
  scale.canonicalize();
  return one_minus.inverse() * scale;
}

std::vector<std::size_t> refine_by_sigma_indices(const IcmResult& result, const Int& ell) {
  FieldPtr k = result.order.lattice.field();
  Int f1 = poly::eval(k->modulus(), Int(1));
  if (ell < 2 || !is_prime(ell) || f1 % ell != 0)
    throw Error(ErrorCode::NotADivisor, "not a divisor of the point count");
  FieldElement sigma = sigma_element(k, ell);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < result.classes.size(); ++i) {
    bool stable = result.classes[i].rep.stable_under(sigma);
    bool in_ring = result.classes[i].multiplicator_ring.lattice.contains(sigma);
    if (stable != in_ring) throw Error(ErrorCode::Internal, "sigma routes disagree");
    if (stable) out.push_back(i);
  }
  return out;
}

std::vector<IdealLattice> refine_by_sigma(const IcmResult& result, const Int& ell) {
  std::vector<IdealLattice> out;
  for (auto i : refine_by_sigma_indices(result, ell)) out.push_back(result.classes[i].rep);
  return out;
}

}  // namespace avcyc
