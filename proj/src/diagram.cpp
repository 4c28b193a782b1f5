#include "chord/diagram.hpp"

#include "chord/errors.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace chord {

void validate_matching(std::span<const int> partner) {
  const int size = static_cast<int>(partner.size());
  if (size == 0 || size % 2 != 0) throw std::invalid_argument("a diagram needs an even, positive vertex count");
  for (int v = 1; v <= size; ++v) {
    int p = partner[static_cast<std::size_t>(v - 1)];
    if (p < 1 || p > size) throw std::invalid_argument("partner out of range at vertex " + std::to_string(v));
    if (p == v) throw std::invalid_argument("vertex " + std::to_string(v) + " is matched to itself");
    if (partner[static_cast<std::size_t>(p - 1)] != v)
      throw std::invalid_argument("partner map is not an involution at vertex " + std::to_string(v));
  }
}

Diagram::Diagram(std::vector<int> partner) : partner_(std::move(partner)) { validate_matching(partner_); }

Diagram Diagram::from_chords(std::span<const std::pair<int, int>> chords) {
  std::vector<int> partner(chords.size() * 2, 0);
  const int size = static_cast<int>(partner.size());
  for (auto [a, b] : chords) {
    if (a < 1 || b < 1 || a > size || b > size) throw std::invalid_argument("chord endpoint out of range");
    if (partner[static_cast<std::size_t>(a - 1)] != 0 || partner[static_cast<std::size_t>(b - 1)] != 0)
      throw std::invalid_argument("vertex used by two chords");
    partner[static_cast<std::size_t>(a - 1)] = b;
    partner[static_cast<std::size_t>(b - 1)] = a;
  }
  return Diagram(std::move(partner));
}

Diagram Diagram::parse(std::string_view text) {
  std::vector<std::pair<int, int>> chords;
  std::size_t i = 0;
  auto skip_space = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto expect = [&](char c) {
    skip_space();
    if (i >= text.size() || text[i] != c) throw std::invalid_argument(std::string("expected '") + c + "' in diagram text");
    ++i;
  };
  auto number = [&] {
    skip_space();
    std::size_t begin = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (begin == i) throw std::invalid_argument("expected a vertex number in diagram text");
    return std::stoi(std::string(text.substr(begin, i - begin)));
  };
  skip_space();
  while (i < text.size()) {
    expect('(');
    int a = number();
    expect(',');
    int b = number();
    expect(')');
    chords.emplace_back(a, b);
    skip_space();
  }
  return from_chords(chords);
}

Diagram Diagram::all_short(int n) {
  if (n < 1) throw std::invalid_argument("a diagram needs at least one chord");
  std::vector<int> partner(static_cast<std::size_t>(2 * n));
  for (int v = 1; v <= 2 * n; v += 2) {
    partner[static_cast<std::size_t>(v - 1)] = v + 1;
    partner[static_cast<std::size_t>(v)] = v;
  }
  return Diagram(Unchecked{}, std::move(partner));
}

std::vector<std::pair<int, int>> Diagram::chord_list() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(partner_.size() / 2);
  for (int v = 1; v <= vertices(); ++v)
    if (partner(v) > v) out.emplace_back(v, partner(v));
  return out;
}

std::string Diagram::to_string() const {
  std::string out;
  for (auto [a, b] : chord_list()) out += "(" + std::to_string(a) + "," + std::to_string(b) + ")";
  return out;
}

// ---------------------------------------------------------------------------

DiagramEnumerator::DiagramEnumerator(int n) : DiagramEnumerator(n, 0) {}

DiagramEnumerator::DiagramEnumerator(int n, int partner_of_first)
    : n_(n), fixed_first_(partner_of_first), current_(Diagram::Unchecked{}, {}) {
  if (n < 1) throw std::invalid_argument("enumeration needs n >= 1");
  if (n > kEnumerationCap)
    throw CapacityError("enumeration is capped at n = " + std::to_string(kEnumerationCap));
  if (partner_of_first != 0 && (partner_of_first < 2 || partner_of_first > 2 * n))
    throw std::invalid_argument("partner of vertex 1 must lie in [2, 2n]");
  current_.partner_.assign(static_cast<std::size_t>(2 * n), 0);
  left_.assign(static_cast<std::size_t>(n), 0);
  right_.assign(static_cast<std::size_t>(n), 0);
}

int DiagramEnumerator::next_free_after(int v) const {
  for (int u = v + 1; u <= 2 * n_; ++u)
    if (current_.partner_[static_cast<std::size_t>(u - 1)] == 0) return u;
  return 0;
}

void DiagramEnumerator::descend(int depth) {
  auto& p = current_.partner_;
  for (int d = depth; d < n_; ++d) {
    int a = next_free_after(d == 0 ? 0 : left_[static_cast<std::size_t>(d - 1)]);
    int b = (d == 0 && fixed_first_ != 0) ? fixed_first_ : next_free_after(a);
    left_[static_cast<std::size_t>(d)] = a;
    right_[static_cast<std::size_t>(d)] = b;
    p[static_cast<std::size_t>(a - 1)] = b;
    p[static_cast<std::size_t>(b - 1)] = a;
  }
}

const Diagram* DiagramEnumerator::next() {
  if (done_) return nullptr;
  if (!started_) {
    started_ = true;
    descend(0);
    return &current_;
  }
  auto& p = current_.partner_;
  for (int d = n_ - 1; d >= 0; --d) {
    int a = left_[static_cast<std::size_t>(d)];
    int b = right_[static_cast<std::size_t>(d)];
    p[static_cast<std::size_t>(a - 1)] = 0;
    p[static_cast<std::size_t>(b - 1)] = 0;
    if (d == 0 && fixed_first_ != 0) break;
    int c = next_free_after(b);
    if (c != 0) {
      right_[static_cast<std::size_t>(d)] = c;
      p[static_cast<std::size_t>(a - 1)] = c;
      p[static_cast<std::size_t>(c - 1)] = a;
      descend(d + 1);
      return &current_;
    }
  }
  done_ = true;
  return nullptr;
}

BigInt diagram_count(int n) {
  if (n < 0) throw std::invalid_argument("negative chord count");
  return double_factorial(2 * n - 1);
}

Diagram sample_uniform(int n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("sampling needs n >= 1");
  const int size = 2 * n;
  std::vector<int> partner(static_cast<std::size_t>(size), 0);
  // Unmatched vertices in a swap-remove pool; slot[v-1] is v's index in it.
  std::vector<int> pool(static_cast<std::size_t>(size));
  std::vector<int> slot(static_cast<std::size_t>(size));
  for (int v = 1; v <= size; ++v) {
    pool[static_cast<std::size_t>(v - 1)] = v;
    slot[static_cast<std::size_t>(v - 1)] = v - 1;
  }
  auto remove = [&](int v) {
    int idx = slot[static_cast<std::size_t>(v - 1)];
    int last = pool.back();
    pool[static_cast<std::size_t>(idx)] = last;
    slot[static_cast<std::size_t>(last - 1)] = idx;
    pool.pop_back();
  };
  int lowest = 1;
  while (!pool.empty()) {
    while (partner[static_cast<std::size_t>(lowest - 1)] != 0) ++lowest;
    auto others = static_cast<std::uint64_t>(pool.size() - 1);
    auto r = static_cast<int>(uniform_below(rng, others));
    if (r >= slot[static_cast<std::size_t>(lowest - 1)]) ++r;
    int mate = pool[static_cast<std::size_t>(r)];
    partner[static_cast<std::size_t>(lowest - 1)] = mate;
    partner[static_cast<std::size_t>(mate - 1)] = lowest;
    remove(lowest);
    remove(mate);
  }
  return Diagram(std::move(partner));
}

// ---------------------------------------------------------------------------

std::vector<int> short_chords(const Diagram& d) {
  std::vector<int> out;
  for (int v = 1; v < d.vertices(); ++v)
    if (d.partner(v) == v + 1) out.push_back(v);
  return out;
}

int short_chord_count(const Diagram& d) {
  int count = 0;
  for (int v = 1; v < d.vertices(); ++v) count += d.partner(v) == v + 1;
  return count;
}

BubbleDecomposition bubbles(const Diagram& d) {
  BubbleDecomposition out;
  const int size = d.vertices();
  auto close_run = [&](int start, int end) {  // vertices [start, end)
    if (end <= start) return;
    Bubble b{start, end - start, 0};
    for (int v = start; v < end; ++v) {
      int p = d.partner(v);
      b.bridges += p < start || p >= end;
    }
    out.bubbles.push_back(b);
  };
  int run_start = 1;
  int v = 1;
  while (v <= size) {
    if (v < size && d.partner(v) == v + 1) {
      close_run(run_start, v);
      out.short_chord_positions.push_back(v);
      v += 2;
      run_start = v;
    } else {
      ++v;
    }
  }
  close_run(run_start, size + 1);
  return out;
}

bool is_crystallized(const Diagram& d) {
  const auto decomposition = bubbles(d);
  return std::all_of(decomposition.bubbles.begin(), decomposition.bubbles.end(),
                     [](const Bubble& b) { return b.bridges == b.size; });
}

int zero_gaps(const Diagram& d) {
  const auto shorts = short_chords(d);
  if (shorts.empty()) return 0;
  int gaps = 0;
  gaps += shorts.front() == 1;
  gaps += shorts.back() == d.vertices() - 1;
  for (std::size_t i = 1; i < shorts.size(); ++i) gaps += shorts[i] == shorts[i - 1] + 2;
  return gaps;
}

}  // namespace chord
