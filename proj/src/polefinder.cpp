#include "winter/polefinder.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "winter/error.hpp"
#include "winter/krein.hpp"

namespace winter {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};
constexpr int kMaxNewtonSteps = 100;
constexpr int kMaxDilations = 5;

// Raised while walking a contour that passes (numerically) through a zero.
struct BoundaryHit {};

class BalancedDet {
 public:
  BalancedDet(const GpiParams& p, const Channel& ch) : p_(p), ch_(ch) {
    const double x = std::abs(p.gamma.real());
    coupling_scale_ = 1.0 + 0.25 * std::abs(p.coupling_square()) + 2.0 * x;
  }

  cplx operator()(cplx k) const { return det_lambda_balanced(p_, ch_, k); }

  // Magnitudes below this are indistinguishable from a zero on the contour.
  double floor(cplx k) const {
    const double growth = std::exp(std::abs(k.imag()) * ch_.radius);
    const double size = coupling_scale_ + std::abs(p_.alpha) / std::abs(k) + std::abs(p_.beta) * std::abs(k);
    return 1e-14 * growth * size;
  }

 private:
  GpiParams p_;
  Channel ch_;
  double coupling_scale_ = 1.0;
};

cplx checked_eval(const BalancedDet& f, cplx k) {
  const cplx v = f(k);
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()) || std::abs(v) <= f.floor(k)) throw BoundaryHit{};
  return v;
}

// Phase increment of f along [a, b]; every accepted piece turns by less than pi/2.
double segment_phase(const BalancedDet& f, cplx a, cplx fa, cplx b, cplx fb, int depth) {
  const cplx m = 0.5 * (a + b);
  const cplx fm = checked_eval(f, m);
  const double d1 = std::arg(fm / fa);
  const double d2 = std::arg(fb / fm);
  if (std::abs(d1) < kPi / 4.0 && std::abs(d2) < kPi / 4.0) return d1 + d2;
  if (depth > 60 || std::abs(b - a) < 1e-12 * (1.0 + std::abs(a))) throw BoundaryHit{};
  return segment_phase(f, a, fa, m, fm, depth + 1) + segment_phase(f, m, fm, b, fb, depth + 1);
}

// Counterclockwise winding number; throws BoundaryHit on a boundary zero.
int winding_number(const BalancedDet& f, const SearchRegion& r, double radius) {
  const std::array<cplx, 5> corners{cplx{r.re_min, r.im_min}, cplx{r.re_max, r.im_min}, cplx{r.re_max, r.im_max},
                                    cplx{r.re_min, r.im_max}, cplx{r.re_min, r.im_min}};
  const double initial_step = 0.2 / radius;
  double total = 0.0;
  cplx start = corners[0];
  cplx f_start = checked_eval(f, start);
  const cplx f_first = f_start;
  for (std::size_t e = 0; e + 1 < corners.size(); ++e) {
    const cplx end = corners[e + 1];
    const int pieces = std::max(1, static_cast<int>(std::ceil(std::abs(end - start) / initial_step)));
    cplx a = start;
    cplx fa = f_start;
    for (int i = 1; i <= pieces; ++i) {
      const cplx b = (i == pieces) ? end : start + (end - start) * (static_cast<double>(i) / pieces);
      const cplx fb = (i == pieces && e + 2 == corners.size()) ? f_first : checked_eval(f, b);
      total += segment_phase(f, a, fa, b, fb, 0);
      a = b;
      fa = fb;
    }
    start = end;
    f_start = fa;
  }
  const double turns = total / (2.0 * kPi);
  const double rounded = std::round(turns);
  if (std::abs(turns - rounded) > 1e-6) throw BoundaryHit{};
  return static_cast<int>(rounded);
}

SearchRegion dilate(const SearchRegion& r, const Channel& ch) {
  const double dw = 0.005 * r.width();
  const double dh = 0.005 * std::max(r.height(), 1e-3 / ch.radius);
  SearchRegion out{r.re_min - dw, r.re_max + dw, r.im_min - dh, r.im_max + dh};
  out.re_min = std::max(out.re_min, min_search_re(ch));
  out.im_max = std::min(out.im_max, 0.0);
  return out;
}

struct Cell {
  SearchRegion region;
  int count = 0;
  int depth = 0;
};

std::pair<Cell, Cell> split(const Cell& cell, double fraction, bool vertical_cut) {
  Cell lo = cell;
  Cell hi = cell;
  lo.depth = hi.depth = cell.depth + 1;
  if (vertical_cut) {
    const double cut = cell.region.re_min + fraction * cell.region.width();
    lo.region.re_max = cut;
    hi.region.re_min = cut;
  } else {
    const double cut = cell.region.im_min + fraction * cell.region.height();
    lo.region.im_max = cut;
    hi.region.im_min = cut;
  }
  return {lo, hi};
}

class PoleSearch {
 public:
  PoleSearch(const GpiParams& p, const Channel& ch, const PoleSearchOptions& opt)
      : p_(p), ch_(ch), opt_(opt), det_(p, ch) {}

  int top_count(const SearchRegion& region) const {
    SearchRegion r = region;
    for (int attempt = 0; attempt <= kMaxDilations; ++attempt) {
      try {
        return winding_number(det_, r, ch_.radius);
      } catch (const BoundaryHit&) {
        r = dilate(r, ch_);
      }
    }
    throw BoundaryZero("zero on the search boundary persists after dilation");
  }

  // Splits until every cell holds at most one zero and is small enough to seed Newton.
  void subdivide(const Cell& cell, std::vector<Cell>& seeds) const {
    if (cell.count == 0) return;
    const double seed_size = 0.5 / ch_.radius;
    const double w = cell.region.width();
    const double h = cell.region.height();
    if (cell.count == 1 && w <= seed_size && h <= seed_size) {
      seeds.push_back(cell);
      return;
    }
    if (std::max(w, h) < 1e-6 / ch_.radius || cell.depth >= opt_.max_depth) {
      if (cell.count >= 2) {
        throw ClusteredZeros(std::to_string(cell.count) + " zeros in a cell near " +
                             std::to_string(cell.region.re_min) + std::to_string(cell.region.im_min) + "i");
      }
      seeds.push_back(cell);
      return;
    }
    const auto [lo, hi] = split_counted(cell);
    subdivide(lo, seeds);
    subdivide(hi, seeds);
  }

  std::pair<Cell, Cell> split_counted(const Cell& cell) const {
    static constexpr std::array<double, 7> kFractions{0.5, 0.45, 0.55, 0.4, 0.6, 0.35, 0.65};
    const bool vertical_cut = cell.region.width() >= cell.region.height();
    for (const double fraction : kFractions) {
      auto [lo, hi] = split(cell, fraction, vertical_cut);
      try {
        lo.count = winding_number(det_, lo.region, ch_.radius);
        hi.count = winding_number(det_, hi.region, ch_.radius);
      } catch (const BoundaryHit&) {
        continue;
      }
      if (lo.count >= 0 && hi.count >= 0 && lo.count + hi.count == cell.count) return {lo, hi};
    }
    throw BoundaryZero("no admissible bisection line for a search cell");
  }

  RefineResult refine_cell(const Cell& cell) const {
    Cell current = cell;
    for (int attempt = 0; attempt < 2; ++attempt) {
      const SearchRegion& r = current.region;
      const cplx seed{0.5 * (r.re_min + r.re_max), 0.5 * (r.im_min + r.im_max)};
      try {
        const RefineResult res = refine(p_, ch_, seed);
        if (r.contains(res.k) || on_edge(r, res.k)) return res;
      } catch (const NonConvergence&) {
      }
      if (attempt == 1) break;
      auto [lo, hi] = split_counted(current);
      current = lo.count == 1 ? lo : hi;
    }
    throw NonConvergence("Newton iteration did not settle inside its search cell");
  }

 private:
  static bool on_edge(const SearchRegion& r, cplx k) {
    const double slack = 1e-9 * (1.0 + std::abs(k));
    return k.real() >= r.re_min - slack && k.real() <= r.re_max + slack && k.imag() >= r.im_min - slack &&
           k.imag() <= r.im_max + slack;
  }

  GpiParams p_;
  Channel ch_;
  PoleSearchOptions opt_;
  BalancedDet det_;
};

struct Lattice {
  double offset = 0.0;
  double spacing = 1.0;
};

Lattice class_lattice(GpiClass cls, const GpiParams& p, const Channel& ch) {
  const double r = ch.radius;
  const double l = ch.l;
  switch (cls) {
    case GpiClass::Delta: {
      const double alpha = canonical_real_gamma(p).alpha;
      const double phase = alpha > 0.0 ? 1.5 * kPi : 0.5 * kPi;
      return {(l * kPi + phase) / (2.0 * r), kPi / r};
    }
    case GpiClass::Intermediate: {
      const double phase = p.gamma.real() > 0.0 ? 0.5 * kPi : 1.5 * kPi;
      return {(0.5 * kPi * l + phase) / r, kPi / r};
    }
    case GpiClass::DeltaPrime:
      return {kPi * (l + 1.0) / (2.0 * r), kPi / r};
  }
  return {};
}

}  // namespace

void validate(const SearchRegion& r, const Channel& ch) {
  validate(ch);
  if (!(r.re_min >= min_search_re(ch) * (1.0 - 1e-12))) {
    throw std::invalid_argument("search region must start at Re k >= 1e-3/R");
  }
  if (!(r.re_min < r.re_max)) throw std::invalid_argument("search region needs re_min < re_max");
  if (!(r.im_min <= r.im_max && r.im_max <= 0.0)) {
    throw std::invalid_argument("search region needs im_min <= im_max <= 0");
  }
  if (!(r.im_min < r.im_max)) throw std::invalid_argument("search region has zero height");
}

double min_search_re(const Channel& ch) { return 1e-3 / ch.radius; }

double default_im_min(const Channel& ch, double re_max) {
  return -(std::log(re_max * ch.radius) + 5.0) / ch.radius;
}

int count_zeros(const GpiParams& p, const Channel& ch, const SearchRegion& region) {
  validate(region, ch);
  return PoleSearch(p, ch, PoleSearchOptions{}).top_count(region);
}

RefineResult refine(const GpiParams& p, const Channel& ch, cplx k0) {
  validate(ch);
  if (k0 == cplx{0.0, 0.0}) throw OriginSingularity("Newton seed at k = 0");
  cplx k = k0;
  cplx f = det_lambda_balanced(p, ch, k);
  int step = 0;
  // |det| from the balanced value; the e^{-ikR} factor alone can make |f| small.
  auto raw_residual = [&](cplx at, cplx value) { return std::abs(value) * std::exp(-at.imag() * ch.radius); };
  for (; step < kMaxNewtonSteps; ++step) {
    if (raw_residual(k, f) < 1e-12) break;
    const double h = 1e-6 * std::max(1.0, std::abs(k));
    const cplx df = (det_lambda_balanced(p, ch, k + h) - det_lambda_balanced(p, ch, k - h)) / (2.0 * h);
    if (df == cplx{0.0, 0.0} || !std::isfinite(std::abs(df))) {
      throw NonConvergence("vanishing derivative in Newton iteration");
    }
    const cplx full = -f / df;
    // Halve the step until |f| decreases.
    double damping = 1.0;
    cplx k_next = k + full;
    cplx f_next = det_lambda_balanced(p, ch, k_next);
    for (int halvings = 0; !(std::abs(f_next) < std::abs(f)) && halvings < 30; ++halvings) {
      damping *= 0.5;
      k_next = k + damping * full;
      f_next = det_lambda_balanced(p, ch, k_next);
    }
    if (!(std::abs(f_next) < std::abs(f))) {
      // No descent direction left: either converged to rounding level or stuck.
      if (std::abs(full) < 1e-10 * std::max(1.0, std::abs(k))) break;
      throw NonConvergence("Newton iteration stalled at |det| = " + std::to_string(std::abs(f)));
    }
    const double moved = std::abs(k_next - k);
    k = k_next;
    f = f_next;
    if (moved < 1e-12 * std::max(1.0, std::abs(k))) {
      ++step;
      break;
    }
  }
  if (step >= kMaxNewtonSteps) throw NonConvergence("Newton iteration exceeded 100 steps");
  return {k, std::abs(det_lambda(p, ch, k)), step};
}

std::vector<Resonance> find_poles(const GpiParams& p, const Channel& ch, double re_max, double im_min,
                                  const PoleSearchOptions& options) {
  validate(ch);
  if (!(re_max > min_search_re(ch))) throw std::invalid_argument("re_max must exceed 1e-3/R");
  return find_poles(p, ch, SearchRegion{min_search_re(ch), re_max, im_min, 0.0}, options);
}

std::vector<Resonance> find_poles(const GpiParams& p, const Channel& ch, const SearchRegion& region,
                                  const PoleSearchOptions& options) {
  validate(region, ch);
  const PoleSearch search(p, ch, options);
  const int total = search.top_count(region);
  if (total == 0) return {};

  std::vector<Cell> seeds;
  search.subdivide(Cell{region, total, 0}, seeds);

  std::vector<Resonance> poles;
  const GpiClass cls = classify(p);
  for (const Cell& cell : seeds) {
    const RefineResult r = search.refine_cell(cell);
    if (!(r.residual < options.residual_tolerance)) {
      throw NonConvergence("pole residual " + std::to_string(r.residual) + " above tolerance");
    }
    poles.push_back(Resonance{0, r.k, r.residual, ch, cls});
  }
  std::sort(poles.begin(), poles.end(), [](const Resonance& a, const Resonance& b) {
    return a.k.real() < b.k.real() || (a.k.real() == b.k.real() && a.k.imag() < b.k.imag());
  });
  std::vector<Resonance> unique;
  for (const Resonance& pole : poles) {
    if (!unique.empty() && std::abs(unique.back().k - pole.k) < options.dedupe_tolerance * std::abs(pole.k)) continue;
    unique.push_back(pole);
  }
  if (static_cast<int>(unique.size()) != total) {
    throw NonConvergence("found " + std::to_string(unique.size()) + " distinct poles but the winding count is " +
                         std::to_string(total));
  }
  return index_poles(std::move(unique), ch, cls, p);
}

std::vector<Resonance> index_poles(std::vector<Resonance> poles, const Channel& ch, GpiClass cls,
                                   const GpiParams& p) {
  if (poles.empty()) return poles;
  const Lattice lattice = class_lattice(cls, p, ch);
  auto nearest = [&](const Resonance& r) {
    return static_cast<int>(std::lround((r.k.real() - lattice.offset) / lattice.spacing));
  };
  auto distance = [&](const Resonance& r, int n) {
    return std::abs(r.k.real() - (lattice.offset + n * lattice.spacing));
  };

  for (auto& pole : poles) pole.index = nearest(pole);
  for (std::size_t i = 1; i < poles.size(); ++i) {
    Resonance& prev = poles[i - 1];
    Resonance& cur = poles[i];
    if (cur.index > prev.index) continue;
    // Two poles claim one lattice site: the one farther from it moves to the free neighbour.
    const bool prev_can_drop = i < 2 || poles[i - 2].index < prev.index - 1;
    if (cur.index == prev.index && distance(prev, prev.index) > distance(cur, cur.index) && prev_can_drop) {
      --prev.index;
    } else if (cur.index == prev.index) {
      ++cur.index;
    } else {
      cur.index = prev.index + 1;
    }
  }
  for (std::size_t i = 0; i < poles.size(); ++i) {
    if (poles[i].index < 0) {
      throw AmbiguousIndex("pole at Re k = " + std::to_string(poles[i].k.real()) + " lies below the first lattice site");
    }
    if (i > 0 && poles[i].index == poles[i - 1].index) {
      throw AmbiguousIndex("two poles share index " + std::to_string(poles[i].index));
    }
    poles[i].gpi_class = cls;
  }
  return poles;
}

}  // namespace winter
