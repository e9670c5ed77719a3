#include "qlk/pbw.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <map>
#include <mutex>
#include <set>
#include <shared_mutex>
#include <sstream>
#include <unordered_map>

#include "qlk/errors.hpp"

namespace qlk {

namespace {

// Degrees beyond this are outside any supported truncation window and the
// 1-byte factor packing below.
constexpr int kMaxDegree = 100;
constexpr int kMaxRecursion = 20000;

const int kGenWeight[3] = {2, 0, -2};
const char* const kGenName[3] = {"e", "h", "f"};
const int kGenSigma[3] = {GenF, GenH, GenE};

// [x, y] = coeff * z in the Chevalley basis; false when the bracket is 0.
bool bracket(int x, int y, int& coeff, int& z) {
  static const int table[3][3][2] = {
      // e            h             f
      {{0, 0}, {-2, GenE}, {1, GenH}},   // [e, *]
      {{2, GenE}, {0, 0}, {-2, GenF}},   // [h, *]
      {{-1, GenH}, {2, GenF}, {0, 0}},   // [f, *]
  };
  coeff = table[x][y][0];
  z = table[x][y][1];
  return coeff != 0;
}

// Normalized invariant form: (e|f) = (f|e) = 1, (h|h) = 2.
int form(int x, int y) {
  if ((x == GenE && y == GenF) || (x == GenF && y == GenE)) return 1;
  if (x == GenH && y == GenH) return 2;
  return 0;
}

std::string key_of(const std::vector<Factor>& fs) {
  std::string s;
  s.reserve(fs.size() * 2);
  for (const Factor& f : fs) {
    s.push_back(static_cast<char>(-f.mode));
    s.push_back(static_cast<char>(f.gen));
  }
  return s;
}

struct Registry {
  std::shared_mutex mu;
  std::unordered_map<std::string, MonoId> index;
  std::deque<std::vector<Factor>> factors;
  std::deque<std::pair<int, int>> grade;  // (degree, weight)

  Registry() {
    index.emplace(std::string(), 0);
    factors.emplace_back();
    grade.emplace_back(0, 0);
  }
};

Registry& registry() {
  static Registry r;
  return r;
}

void check_canonical(const std::vector<Factor>& fs) {
  for (const Factor& f : fs) {
    if (f.gen < 0 || f.gen > 2 || f.mode > -1 || -f.mode > kMaxDegree)
      throw Error(ErrorCode::Internal, "vacuum_engine",
                  "malformed PBW factor");
  }
  for (std::size_t i = 1; i < fs.size(); ++i)
    if (factor_less(fs[i], fs[i - 1]))
      throw Error(ErrorCode::Internal, "vacuum_engine",
                  "PBW factor sequence not canonical");
}

struct MemoShard {
  std::shared_mutex mu;
  std::unordered_map<std::uint64_t, std::vector<ActionTerm>> map;
};

MemoShard* memo_shards() {
  static MemoShard shards[64];
  return shards;
}

std::uint64_t memo_key(int gen, int mode, MonoId id) {
  return static_cast<std::uint64_t>(id) |
         (static_cast<std::uint64_t>(mode + 128) << 32) |
         (static_cast<std::uint64_t>(gen) << 41);
}

thread_local int g_depth = 0;

struct DepthGuard {
  DepthGuard() {
    if (++g_depth > kMaxRecursion)
      throw Error(ErrorCode::TruncationError, "vacuum_engine",
                  "normal ordering exceeded the internal recursion bound");
  }
  ~DepthGuard() { --g_depth; }
};

std::vector<ActionTerm> compute_apply(int gen, int mode, MonoId id) {
  DepthGuard guard;
  if (id == vacuum_id()) {
    if (mode <= -1)
      return {ActionTerm{intern_monomial({Factor{gen, mode}}), 1, 0}};
    return {};  // zero modes and annihilators kill the vacuum
  }
  const std::vector<Factor> fs = monomial_factors(id);
  const Factor head = fs[0];
  const MonoId tail =
      intern_monomial(std::vector<Factor>(fs.begin() + 1, fs.end()));
  const Factor me{gen, mode};

  if (mode <= -1 && factor_le(me, head)) {
    std::vector<Factor> nf;
    nf.reserve(fs.size() + 1);
    nf.push_back(me);
    nf.insert(nf.end(), fs.begin(), fs.end());
    return {ActionTerm{intern_monomial(nf), 1, 0}};
  }

  // x(n) y(m) = y(m) x(n) + [x,y](n+m) + n delta_{n+m,0} (x|y) k
  std::map<MonoId, std::pair<__int128, __int128>> acc;
  for (const ActionTerm& t : apply_mode(gen, mode, tail)) {
    // Re-attach the head factor; insertion into creation monomials never
    // meets a central term, so these coefficients are k-free.
    for (const ActionTerm& p : apply_mode(head.gen, head.mode, t.id)) {
      if (p.c1 != 0)
        throw Error(ErrorCode::Internal, "vacuum_engine",
                    "creation insertion produced a level term");
      auto& slot = acc[p.id];
      slot.first += static_cast<__int128>(p.c0) * t.c0;
      slot.second += static_cast<__int128>(p.c0) * t.c1;
    }
  }
  int bc = 0, bz = 0;
  if (bracket(gen, head.gen, bc, bz)) {
    for (const ActionTerm& t : apply_mode(bz, mode + head.mode, tail)) {
      auto& slot = acc[t.id];
      slot.first += static_cast<__int128>(bc) * t.c0;
      slot.second += static_cast<__int128>(bc) * t.c1;
    }
  }
  if (mode + head.mode == 0) {
    const int f = form(gen, head.gen);
    if (f != 0) acc[tail].second += static_cast<__int128>(mode) * f;
  }

  std::vector<ActionTerm> out;
  out.reserve(acc.size());
  constexpr __int128 kBound = static_cast<__int128>(1) << 62;
  for (const auto& [mid, c] : acc) {
    if (c.first == 0 && c.second == 0) continue;
    if (c.first >= kBound || c.first <= -kBound || c.second >= kBound ||
        c.second <= -kBound)
      throw Error(ErrorCode::Internal, "vacuum_engine",
                  "straightening coefficient out of range");
    out.push_back(ActionTerm{mid, static_cast<long long>(c.first),
                             static_cast<long long>(c.second)});
  }
  return out;
}

struct BasisCache {
  std::mutex mu;
  std::set<int> built;
  std::map<std::pair<int, int>, GradedComponent> blocks;
};

BasisCache& basis_cache() {
  static BasisCache c;
  return c;
}

void build_degree_locked(BasisCache& c, int d) {
  std::vector<Factor> all;
  for (int n = -d; n <= -1; ++n)
    for (int g = 0; g < 3; ++g) all.push_back(Factor{g, n});

  std::vector<Factor> cur;
  std::map<int, std::vector<MonoId>> by_weight;
  // Enumerate multisets of factors with total degree d, factors drawn in
  // canonical order so every emitted sequence is canonical.
  auto rec = [&](auto&& self, std::size_t i, int remaining) -> void {
    if (remaining == 0) {
      int w = 0;
      for (const Factor& f : cur) w += gen_weight(f.gen);
      by_weight[w].push_back(intern_monomial(cur));
      return;
    }
    if (i == all.size()) return;
    const int step = -all[i].mode;
    self(self, i + 1, remaining);  // zero copies first
    int used = 0;
    while (remaining - (used + step) >= 0) {
      used += step;
      cur.push_back(all[i]);
      self(self, i + 1, remaining - used);
    }
    for (int c2 = 0; c2 < used / step; ++c2) cur.pop_back();
  };
  rec(rec, 0, d);

  for (auto& [w, ids] : by_weight) {
    std::sort(ids.begin(), ids.end(), [](MonoId a, MonoId b) {
      const auto& fa = monomial_factors(a);
      const auto& fb = monomial_factors(b);
      return std::lexicographical_compare(fa.begin(), fa.end(), fb.begin(),
                                          fb.end(), factor_less);
    });
    GradedComponent gc;
    gc.degree = d;
    gc.weight = w;
    gc.basis = std::move(ids);
    c.blocks.emplace(std::make_pair(d, w), std::move(gc));
  }
  c.built.insert(d);
}

}  // namespace

int gen_weight(int gen) { return kGenWeight[gen]; }
const char* gen_name(int gen) { return kGenName[gen]; }
int gen_sigma(int gen) { return kGenSigma[gen]; }

bool factor_less(const Factor& a, const Factor& b) {
  if (a.mode != b.mode) return a.mode < b.mode;
  return a.gen < b.gen;
}

bool factor_le(const Factor& a, const Factor& b) { return !factor_less(b, a); }

MonoId vacuum_id() { return 0; }

MonoId intern_monomial(const std::vector<Factor>& canonical) {
  check_canonical(canonical);
  const std::string key = key_of(canonical);
  Registry& r = registry();
  {
    std::shared_lock lock(r.mu);
    auto it = r.index.find(key);
    if (it != r.index.end()) return it->second;
  }
  std::unique_lock lock(r.mu);
  auto it = r.index.find(key);
  if (it != r.index.end()) return it->second;
  const MonoId id = static_cast<MonoId>(r.factors.size());
  int d = 0, w = 0;
  for (const Factor& f : canonical) {
    d -= f.mode;
    w += gen_weight(f.gen);
  }
  r.factors.push_back(canonical);
  r.grade.emplace_back(d, w);
  r.index.emplace(key, id);
  return id;
}

const std::vector<Factor>& monomial_factors(MonoId id) {
  Registry& r = registry();
  std::shared_lock lock(r.mu);
  return r.factors.at(id);
}

int monomial_degree(MonoId id) {
  Registry& r = registry();
  std::shared_lock lock(r.mu);
  return r.grade.at(id).first;
}

int monomial_weight(MonoId id) {
  Registry& r = registry();
  std::shared_lock lock(r.mu);
  return r.grade.at(id).second;
}

std::string monomial_name(MonoId id) {
  const std::vector<Factor>& fs = monomial_factors(id);
  if (fs.empty()) return "vac";
  std::ostringstream os;
  for (std::size_t i = 0; i < fs.size();) {
    std::size_t j = i;
    while (j < fs.size() && fs[j] == fs[i]) ++j;
    if (i) os << ' ';
    os << gen_name(fs[i].gen) << '(' << fs[i].mode << ')';
    if (j - i > 1) os << '^' << (j - i);
    i = j;
  }
  return os.str();
}

const GradedComponent& enumerate_basis(int d, int w) {
  if (d < 0 || d > kMaxDegree)
    throw Error(ErrorCode::TruncationError, "vacuum_engine",
                "degree outside the supported range");
  BasisCache& c = basis_cache();
  std::lock_guard lock(c.mu);
  if (!c.built.count(d)) build_degree_locked(c, d);
  auto it = c.blocks.find({d, w});
  if (it == c.blocks.end()) {
    GradedComponent empty;
    empty.degree = d;
    empty.weight = w;
    it = c.blocks.emplace(std::make_pair(d, w), std::move(empty)).first;
  }
  return it->second;
}

std::vector<Int> universal_graded_dims(int N) {
  if (N < 0)
    throw Error(ErrorCode::Internal, "vacuum_engine",
                "negative truncation order");
  std::vector<Int> dims(N + 1, Int(0));
  dims[0] = 1;
  for (int n = 1; n <= N; ++n)
    for (int rep = 0; rep < 3; ++rep)
      for (int j = n; j <= N; ++j) dims[j] += dims[j - n];
  return dims;
}

const std::vector<ActionTerm>& apply_mode(int gen, int mode, MonoId id) {
  if (gen < 0 || gen > 2 || mode < -kMaxDegree || mode > kMaxDegree)
    throw Error(ErrorCode::Internal, "vacuum_engine", "malformed mode operator");
  const std::uint64_t key = memo_key(gen, mode, id);
  MemoShard& shard = memo_shards()[key % 64];
  {
    std::shared_lock lock(shard.mu);
    auto it = shard.map.find(key);
    if (it != shard.map.end()) return it->second;
  }
  std::vector<ActionTerm> value = compute_apply(gen, mode, id);
  std::unique_lock lock(shard.mu);
  auto [it, inserted] = shard.map.emplace(key, std::move(value));
  return it->second;
}

}  // namespace qlk
