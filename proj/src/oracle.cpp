#include "hexgauge/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <map>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

#include <Eigen/Dense>

namespace hexgauge::oracle {

namespace {

using Complex = std::complex<double>;

// ---- Racah formula -------------------------------------------------------

double factorial(int n) {
  static const std::vector<double> table = [] {
    std::vector<double> t(171, 1.0);
    for (int k = 1; k < 171; ++k) t[k] = t[k - 1] * k;
    return t;
  }();
  if (n < 0 || n > 170) throw std::out_of_range("factorial argument out of range");
  return table[static_cast<std::size_t>(n)];
}

// Arguments are 2j; the triad must close with an integer total.
bool triangle(int ta, int tb, int tc) {
  return (ta + tb + tc) % 2 == 0 && ta <= tb + tc && tb <= ta + tc && tc <= ta + tb;
}

double delta(int ta, int tb, int tc) {
  return std::sqrt(factorial((ta + tb - tc) / 2) * factorial((ta - tb + tc) / 2) * factorial((-ta + tb + tc) / 2) /
                   factorial((ta + tb + tc) / 2 + 1));
}

int twice_of(double j) {
  const double t = 2.0 * j;
  const double r = std::round(t);
  if (!(j >= 0.0) || std::abs(t - r) > 1e-12) {
    throw std::invalid_argument("angular momentum must be a non-negative half-integer");
  }
  return static_cast<int>(r);
}

Complex phase_of_twice(int twice_exponent) {
  // (-1)^{e/2} = exp(i pi e / 2)
  static constexpr std::array<Complex, 4> kPhases{Complex{1, 0}, Complex{0, 1}, Complex{-1, 0}, Complex{0, -1}};
  return kPhases[static_cast<std::size_t>(((twice_exponent % 4) + 4) % 4)];
}

// ---- Honeycomb geometry ---------------------------------------------------

enum Dir { kX = 0, kY = 1, kD = 2 };
constexpr std::array<std::array<int, 2>, 3> kDir{{{1, 0}, {0, 1}, {1, -1}}};

struct Raw {
  int i = 0;
  int j = 0;
  Raw operator+(const std::array<int, 2>& d) const { return {i + d[0], j + d[1]}; }
  Raw operator-(const std::array<int, 2>& d) const { return {i - d[0], j - d[1]}; }
  friend bool operator==(const Raw&, const Raw&) = default;
};

struct Edge {
  Raw base;
  int dir = kX;
};

struct Triangle {
  std::array<Raw, 3> plaquettes;
  std::array<Edge, 3> edges;
};

Triangle up_triangle(Raw b) {
  return {{b, b + kDir[kX], b + kDir[kY]}, {Edge{b, kX}, Edge{b, kY}, Edge{b + kDir[kY], kD}}};
}

Triangle down_triangle(Raw b) {
  return {{b, b + kDir[kX], b + kDir[kD]}, {Edge{b, kX}, Edge{b, kD}, Edge{b + kDir[kD], kY}}};
}

class Region {
 public:
  explicit Region(const LatticeConfig& cfg) : cfg_(cfg) {}

  Raw reduce(Raw r) const {
    if (!cfg_.periodic()) return r;
    return {((r.i % cfg_.nx) + cfg_.nx) % cfg_.nx, ((r.j % cfg_.ny) + cfg_.ny) % cfg_.ny};
  }
  bool inside(Raw r) const { return cfg_.periodic() || cfg_.contains(r.i, r.j); }
  bool touches(const Edge& e, Raw p) const {
    return reduce(e.base) == reduce(p) || reduce(e.base + kDir[e.dir]) == reduce(p);
  }
  bool edge_inside(const Edge& e) const { return inside(e.base) || inside(e.base + kDir[e.dir]); }
  std::tuple<int, int, int> edge_key(const Edge& e) const {
    const Raw b = reduce(e.base);
    return {b.i, b.j, e.dir};
  }
  // Bases scanned for edges and triangles.
  int lo_i() const { return cfg_.periodic() ? 0 : -2; }
  int hi_i() const { return cfg_.periodic() ? cfg_.nx : cfg_.nx + 2; }
  int lo_j() const { return cfg_.periodic() ? 0 : -2; }
  int hi_j() const { return cfg_.periodic() ? cfg_.ny : cfg_.ny + 2; }

 private:
  LatticeConfig cfg_;
};

}  // namespace

double wigner_6j_twice(int tj1, int tj2, int tj3, int tj4, int tj5, int tj6) {
  for (int t : {tj1, tj2, tj3, tj4, tj5, tj6}) {
    if (t < 0) throw std::invalid_argument("angular momentum must be non-negative");
  }
  if (!triangle(tj1, tj2, tj3) || !triangle(tj1, tj5, tj6) || !triangle(tj4, tj2, tj6) ||
      !triangle(tj4, tj5, tj3)) {
    return 0.0;
  }
  const int a1 = (tj1 + tj2 + tj3) / 2;
  const int a2 = (tj1 + tj5 + tj6) / 2;
  const int a3 = (tj4 + tj2 + tj6) / 2;
  const int a4 = (tj4 + tj5 + tj3) / 2;
  const int b1 = (tj1 + tj2 + tj4 + tj5) / 2;
  const int b2 = (tj2 + tj3 + tj5 + tj6) / 2;
  const int b3 = (tj3 + tj1 + tj6 + tj4) / 2;
  const int t_min = std::max({a1, a2, a3, a4});
  const int t_max = std::min({b1, b2, b3});
  double sum = 0.0;
  for (int t = t_min; t <= t_max; ++t) {
    const double term = factorial(t + 1) / (factorial(t - a1) * factorial(t - a2) * factorial(t - a3) *
                                            factorial(t - a4) * factorial(b1 - t) * factorial(b2 - t) *
                                            factorial(b3 - t));
    sum += (t % 2 == 0) ? term : -term;
  }
  return delta(tj1, tj2, tj3) * delta(tj1, tj5, tj6) * delta(tj4, tj2, tj6) * delta(tj4, tj5, tj3) * sum;
}

double wigner_6j(double j1, double j2, double j3, double j4, double j5, double j6) {
  return wigner_6j_twice(twice_of(j1), twice_of(j2), twice_of(j3), twice_of(j4), twice_of(j5), twice_of(j6));
}

std::array<int, 3> twice_spins(VertexState v) {
  switch (v) {
    case VertexState::Zero: return {0, 0, 0};
    case VertexState::A: return {1, 0, 1};
    case VertexState::B: return {1, 1, 0};
    case VertexState::C: return {0, 1, 1};
  }
  throw std::logic_error("bad vertex state");
}

std::optional<VertexState> classify_vertex(int twice_a, int twice_x, int twice_b) {
  for (VertexState v : {VertexState::Zero, VertexState::A, VertexState::B, VertexState::C}) {
    if (twice_spins(v) == std::array<int, 3>{twice_a, twice_x, twice_b}) return v;
  }
  return std::nullopt;
}

Complex vertex_factor(int tja, int tjx, int tjb, int tJa, int tJb) {
  const double root = std::sqrt(static_cast<double>((tJa + 1) * (tjb + 1)));
  return phase_of_twice(tja + tJb + tjx) * root * wigner_6j_twice(tjx, tja, tjb, 1, tJb, tJa);
}

Complex vertex_element(VertexState bra, VertexState ket) {
  const auto before = twice_spins(ket);
  const auto after = twice_spins(bra);
  if (after[1] != before[1] || after[0] == before[0] || after[2] == before[2]) return {};
  return vertex_factor(before[0], before[1], before[2], after[0], after[2]);
}

Complex vertex_element_table(VertexState bra, VertexState ket) {
  using V = VertexState;
  if ((bra == V::A && ket == V::Zero) || (bra == V::Zero && ket == V::A) || (bra == V::B && ket == V::C)) {
    return {0.0, -1.0};
  }
  if (bra == V::C && ket == V::B) return {0.0, 0.5};
  return {};
}

HoneycombGraph build_honeycomb(const LatticeConfig& cfg) {
  cfg.validate();
  const Region region(cfg);
  HoneycombGraph graph;

  std::map<std::tuple<int, int, int>, int> link_ids;
  for (int j = region.lo_j(); j < region.hi_j(); ++j) {
    for (int i = region.lo_i(); i < region.hi_i(); ++i) {
      for (int d = 0; d < 3; ++d) {
        const Edge e{{i, j}, d};
        if (!region.edge_inside(e)) continue;
        if (link_ids.emplace(region.edge_key(e), graph.links).second) ++graph.links;
      }
    }
  }
  if (graph.links > kMaxLinks) throw std::length_error("honeycomb region exceeds the link capacity");
  auto link_of = [&](const Edge& e) {
    const auto it = link_ids.find(region.edge_key(e));
    return it == link_ids.end() ? -1 : it->second;
  };

  std::map<std::tuple<int, int, int>, int> vertex_ids;
  auto add_vertex = [&](int kind, Raw b, const Triangle& t) {
    if (std::none_of(t.plaquettes.begin(), t.plaquettes.end(), [&](Raw p) { return region.inside(p); })) return;
    const Raw r = region.reduce(b);
    if (vertex_ids.emplace(std::tuple{kind, r.i, r.j}, static_cast<int>(graph.vertices.size())).second) {
      graph.vertices.push_back({link_of(t.edges[0]), link_of(t.edges[1]), link_of(t.edges[2])});
    }
  };
  for (int j = region.lo_j(); j < region.hi_j(); ++j) {
    for (int i = region.lo_i(); i < region.hi_i(); ++i) {
      add_vertex(0, {i, j}, up_triangle({i, j}));
      add_vertex(1, {i, j}, down_triangle({i, j}));
    }
  }

  graph.plaquettes.resize(static_cast<std::size_t>(cfg.size()));
  graph.plaquette_masks.resize(static_cast<std::size_t>(cfg.size()));
  for (int j = 0; j < cfg.ny; ++j) {
    for (int i = 0; i < cfg.nx; ++i) {
      const Raw p{i, j};
      const std::array<std::pair<int, Raw>, 6> around{{{0, p},
                                                       {0, p - kDir[kX]},
                                                       {0, p - kDir[kY]},
                                                       {1, p},
                                                       {1, p - kDir[kX]},
                                                       {1, p - kDir[kD]}}};
      struct Loose {
        int vertex;
        int first;
        int second;
        int external;
      };
      std::vector<Loose> corners;
      for (const auto& [kind, base] : around) {
        const Triangle t = kind == 0 ? up_triangle(base) : down_triangle(base);
        const Raw r = region.reduce(base);
        Loose c{vertex_ids.at({kind, r.i, r.j}), -1, -1, -1};
        for (const Edge& e : t.edges) {
          if (!region.touches(e, p)) {
            c.external = link_of(e);
          } else if (c.first < 0) {
            c.first = link_of(e);
          } else {
            c.second = link_of(e);
          }
        }
        if (c.first < 0 || c.second < 0) throw std::logic_error("plaquette corner without two boundary links");
        corners.push_back(c);
      }
      // Walk the boundary so that each corner's outgoing link is the next corner's incoming one.
      std::array<HoneycombGraph::Corner, 6> walk;
      std::vector<bool> used(6, false);
      int incoming = corners[0].first;
      for (int step = 0; step < 6; ++step) {
        bool found = false;
        for (std::size_t c = 0; c < 6 && !found; ++c) {
          if (used[c]) continue;
          const Loose& k = corners[c];
          if (k.first != incoming && k.second != incoming) continue;
          const int outgoing = k.first == incoming ? k.second : k.first;
          walk[static_cast<std::size_t>(step)] = {k.vertex, incoming, k.external, outgoing};
          used[c] = true;
          incoming = outgoing;
          found = true;
        }
        if (!found) throw std::logic_error("plaquette boundary is not a closed hexagon");
      }
      if (incoming != walk[0].a) throw std::logic_error("plaquette boundary does not close");
      std::uint64_t mask = 0;
      for (const auto& c : walk) mask |= std::uint64_t{1} << c.a;
      if (std::popcount(mask) != 6) throw std::logic_error("plaquette boundary links are not distinct");
      const auto idx = static_cast<std::size_t>(cfg.linear_index({i, j}));
      graph.plaquettes[idx] = walk;
      graph.plaquette_masks[idx] = mask;
    }
  }
  return graph;
}

bool satisfies_gauss(const HoneycombGraph& graph, GaugeConfig g) {
  return std::all_of(graph.vertices.begin(), graph.vertices.end(), [&](const std::array<int, 3>& v) {
    return (g.twice_j(v[0]) + g.twice_j(v[1]) + g.twice_j(v[2])) % 2 == 0;
  });
}

int external_half_links(const HoneycombGraph& graph, int p, GaugeConfig g) {
  int count = 0;
  for (const auto& c : graph.plaquettes[static_cast<std::size_t>(p)]) count += g.twice_j(c.x);
  return count;
}

GaugeEnumeration enumerate_gauge_states(const LatticeConfig& cfg) {
  const HoneycombGraph graph = build_honeycomb(cfg);
  GaugeEnumeration out;

  // Depth-first assignment of links in index order; a vertex is checked as
  // soon as its highest-numbered link is set.
  std::vector<std::vector<std::size_t>> closing(static_cast<std::size_t>(graph.links));
  for (std::size_t v = 0; v < graph.vertices.size(); ++v) {
    const int last = *std::max_element(graph.vertices[v].begin(), graph.vertices[v].end());
    if (last < 0) throw std::logic_error("vertex without variable links");
    closing[static_cast<std::size_t>(last)].push_back(v);
  }
  std::vector<GaugeConfig> stack_result;
  auto recurse = [&](auto&& self, int link, std::uint64_t bits) -> void {
    if (link == graph.links) {
      out.gauss.push_back({bits});
      return;
    }
    for (std::uint64_t value : {std::uint64_t{0}, std::uint64_t{1}}) {
      const std::uint64_t next = bits | (value << link);
      const GaugeConfig g{next};
      bool ok = true;
      for (std::size_t v : closing[static_cast<std::size_t>(link)]) {
        const auto& l = graph.vertices[v];
        if ((g.twice_j(l[0]) + g.twice_j(l[1]) + g.twice_j(l[2])) % 2 != 0) {
          ok = false;
          break;
        }
      }
      if (ok) self(self, link + 1, next);
    }
  };
  recurse(recurse, 0, 0);
  std::sort(out.gauss.begin(), out.gauss.end());

  // Breadth-first closure of the vacuum under plaquette toggles.
  std::unordered_map<std::uint64_t, SpinState> word_of;
  std::deque<std::uint64_t> queue{0};
  word_of.emplace(0, SpinState{});
  while (!queue.empty()) {
    const std::uint64_t g = queue.front();
    queue.pop_front();
    const SpinState word = word_of.at(g);
    for (int p = 0; p < cfg.size(); ++p) {
      const std::uint64_t next = g ^ graph.plaquette_masks[static_cast<std::size_t>(p)];
      if (word_of.emplace(next, word.flipped(p)).second) queue.push_back(next);
    }
  }
  for (const auto& [g, word] : word_of) out.reachable.push_back({g});
  std::sort(out.reachable.begin(), out.reachable.end());
  for (const GaugeConfig& g : out.reachable) out.toggle_words.push_back(word_of.at(g.half_links));
  return out;
}

Complex plaquette_element(const HoneycombGraph& graph, int p, GaugeConfig g) {
  const std::uint64_t toggled = g.half_links ^ graph.plaquette_masks[static_cast<std::size_t>(p)];
  const GaugeConfig after{toggled};
  Complex product{1.0, 0.0};
  int b_to_c = 0;
  int c_to_b = 0;
  for (const auto& c : graph.plaquettes[static_cast<std::size_t>(p)]) {
    const auto ket = classify_vertex(g.twice_j(c.a), g.twice_j(c.x), g.twice_j(c.b));
    const auto bra = classify_vertex(after.twice_j(c.a), after.twice_j(c.x), after.twice_j(c.b));
    if (!ket || !bra) throw std::logic_error("vertex violates Gauss's law");
    b_to_c += *ket == VertexState::B && *bra == VertexState::C;
    c_to_b += *ket == VertexState::C && *bra == VertexState::B;
    product *= vertex_factor(g.twice_j(c.a), g.twice_j(c.x), g.twice_j(c.b), after.twice_j(c.a), after.twice_j(c.b));
  }
  if (b_to_c != c_to_b) throw std::logic_error("unequal (BC) and (CB) vertex counts in a plaquette element");
  return product;
}

GaugeHamiltonian ks_hamiltonian(const LatticeConfig& cfg) {
  GaugeEnumeration states = enumerate_gauge_states(cfg);
  GaugeHamiltonian out;
  out.graph = build_honeycomb(cfg);
  out.states = std::move(states.reachable);
  out.toggle_words = std::move(states.toggle_words);

  const double root3 = std::sqrt(3.0);
  const double electric = 3.0 * root3 / 4.0 * cfg.lambda;      // times j(j+1) per link
  const double magnetic = 4.0 * root3 / (9.0 * cfg.lambda);    // times (2 - plaquette)
  const double casimir_half = 0.5 * 1.5;

  std::unordered_map<std::uint64_t, std::size_t> index;
  for (std::size_t k = 0; k < out.states.size(); ++k) index.emplace(out.states[k].half_links, k);

  const auto n = static_cast<Eigen::Index>(out.states.size());
  Eigen::MatrixXcd plaquette_sum = Eigen::MatrixXcd::Zero(n, n);
  std::vector<Eigen::Triplet<double>> triplets;
  for (std::size_t col = 0; col < out.states.size(); ++col) {
    const GaugeConfig g = out.states[col];
    const double diag = electric * casimir_half * std::popcount(g.half_links) + magnetic * 2.0 * cfg.size();
    triplets.emplace_back(static_cast<int>(col), static_cast<int>(col), diag);
    for (int p = 0; p < cfg.size(); ++p) {
      const Complex element = plaquette_element(out.graph, p, g);
      const auto it = index.find(g.half_links ^ out.graph.plaquette_masks[static_cast<std::size_t>(p)]);
      if (it == index.end()) throw std::logic_error("plaquette toggle left the reachable sector");
      plaquette_sum(static_cast<Eigen::Index>(it->second), static_cast<Eigen::Index>(col)) += element;
      out.max_imaginary = std::max(out.max_imaginary, std::abs(element.imag()));
      triplets.emplace_back(static_cast<int>(it->second), static_cast<int>(col), -magnetic * element.real());
    }
  }
  out.max_asymmetry = (plaquette_sum - plaquette_sum.transpose()).cwiseAbs().maxCoeff();
  out.matrix.resize(n, n);
  out.matrix.setFromTriplets(triplets.begin(), triplets.end());
  out.matrix.makeCompressed();
  return out;
}

nlohmann::json CertificationReport::to_json() const {
  return {{"config", hexgauge::to_json(config)},
          {"gauss_states", gauss_states},
          {"reachable_states", reachable_states},
          {"spin_dim", spin_dim},
          {"bijective", bijective},
          {"shift", shift},
          {"max_deviation", max_deviation},
          {"sign_flips", sign_flips},
          {"max_imaginary", max_imaginary},
          {"max_asymmetry", max_asymmetry},
          {"worst_entry", {{"row", worst.row}, {"col", worst.col}, {"gauge", worst.gauge}, {"spin", worst.spin}}},
          {"passed", passed}};
}

CertificationReport certify_isomorphism(const LatticeConfig& cfg, const CertifyOptions& options) {
  CertificationReport report;
  report.config = cfg;
  const GaugeEnumeration enumeration = enumerate_gauge_states(cfg);
  const GaugeHamiltonian gauge = ks_hamiltonian(cfg);
  const Couplings couplings = options.spin_couplings.value_or(Couplings::from_lambda(cfg.lambda));
  const SparseOperator spin = build_hamiltonian(cfg, couplings);

  report.gauss_states = enumeration.gauss.size();
  report.reachable_states = gauge.states.size();
  report.spin_dim = spin.dim();
  report.max_imaginary = gauge.max_imaginary;
  report.max_asymmetry = gauge.max_asymmetry;

  // Bijection: gauge state -> spin basis index of its toggle word.
  const std::size_t n = gauge.states.size();
  std::vector<std::size_t> to_spin(n);
  std::vector<bool> hit(spin.dim(), false);
  report.bijective = n == spin.dim();
  for (std::size_t k = 0; k < n && report.bijective; ++k) {
    to_spin[k] = spin.basis.index_of(gauge.toggle_words[k]);
    if (hit[to_spin[k]]) report.bijective = false;
    hit[to_spin[k]] = true;
  }
  if (!report.bijective) {
    report.max_deviation = INFINITY;
    return report;
  }

  const Eigen::MatrixXd g = Eigen::MatrixXd(gauge.matrix);
  const Eigen::MatrixXd s = Eigen::MatrixXd(spin.matrix);
  auto spin_at = [&](std::size_t r, std::size_t c) {
    return s(static_cast<Eigen::Index>(to_spin[r]), static_cast<Eigen::Index>(to_spin[c]));
  };

  // Per-state sign gauge, propagated from the vacuum along nonzero elements.
  std::vector<int> sign(n, 0);
  std::deque<std::size_t> queue;
  for (std::size_t k = 0; k < n; ++k) {
    if (gauge.states[k].half_links == 0) {
      sign[k] = 1;
      queue.push_back(k);
    }
  }
  while (!queue.empty()) {
    const std::size_t c = queue.front();
    queue.pop_front();
    for (std::size_t r = 0; r < n; ++r) {
      if (sign[r] != 0 || r == c) continue;
      const double ge = g(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
      const double se = spin_at(r, c);
      if (std::abs(ge) < 1e-14 || std::abs(se) < 1e-14) continue;
      sign[r] = sign[c] * ((ge > 0) == (se > 0) ? 1 : -1);
      queue.push_back(r);
    }
  }
  for (int& x : sign) {
    if (x == 0) x = 1;
  }
  report.sign_flips = static_cast<std::size_t>(std::count(sign.begin(), sign.end(), -1));

  double shift = 0.0;
  for (std::size_t k = 0; k < n; ++k) shift += g(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) - spin_at(k, k);
  shift /= static_cast<double>(n);
  report.shift = shift;

  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const double ge = g(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
      const double se = sign[r] * sign[c] * spin_at(r, c) + (r == c ? shift : 0.0);
      const double dev = std::abs(ge - se);
      if (dev > report.max_deviation) {
        report.max_deviation = dev;
        report.worst = {to_spin[r], to_spin[c], ge, spin_at(r, c)};
      }
    }
  }
  report.passed = report.max_deviation < options.tolerance && report.max_imaginary < 1e-12 &&
                  report.max_asymmetry < 1e-12;
  return report;
}

}  // namespace hexgauge::oracle
