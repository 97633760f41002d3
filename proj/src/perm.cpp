#include "rigidity/perm.hpp"

#include <numeric>
#include <stdexcept>

namespace rigidity {

Permutation Permutation::identity(int degree) {
  if (degree < 0 || degree > 255) throw std::invalid_argument("bad permutation degree");
  std::vector<std::uint8_t> imgs(static_cast<std::size_t>(degree));
  std::iota(imgs.begin(), imgs.end(), std::uint8_t{0});
  return Permutation(std::move(imgs));
}

Permutation Permutation::from_images(std::vector<std::uint8_t> imgs) {
  if (imgs.size() > 255) throw std::invalid_argument("bad permutation degree");
  std::vector<bool> seen(imgs.size(), false);
  for (std::uint8_t v : imgs) {
    if (v >= imgs.size() || seen[v]) throw std::invalid_argument("images are not a bijection");
    seen[v] = true;
  }
  return Permutation(std::move(imgs));
}

Permutation Permutation::from_cycle_string(std::string_view text, int degree) {
  Permutation p = identity(degree);
  std::size_t i = 0;
  auto skip_ws = [&] { while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i; };
  skip_ws();
  if (text.substr(i) == "e") return p;
  std::vector<bool> used(static_cast<std::size_t>(degree), false);
  while (i < text.size()) {
    skip_ws();
    if (i >= text.size()) break;
    if (text[i] != '(') throw std::invalid_argument("expected '(' in cycle string");
    ++i;
    std::vector<int> cyc;
    while (true) {
      skip_ws();
      if (i < text.size() && text[i] == ')') { ++i; break; }
      if (i >= text.size() || text[i] < '0' || text[i] > '9')
        throw std::invalid_argument("expected point label in cycle string");
      int v = 0;
      while (i < text.size() && text[i] >= '0' && text[i] <= '9') v = v * 10 + (text[i++] - '0');
      if (v < 1 || v > degree) throw std::invalid_argument("cycle point out of range");
      if (used[v - 1]) throw std::invalid_argument("cycles are not disjoint");
      used[v - 1] = true;
      cyc.push_back(v - 1);
    }
    if (cyc.size() > 1)
      for (std::size_t j = 0; j < cyc.size(); ++j)
        p.imgs_[cyc[j]] = static_cast<std::uint8_t>(cyc[(j + 1) % cyc.size()]);
  }
  return p;
}

Permutation Permutation::after(const Permutation& g) const {
  if (degree() != g.degree()) throw std::invalid_argument("degree mismatch");
  std::vector<std::uint8_t> imgs(imgs_.size());
  for (std::size_t i = 0; i < imgs.size(); ++i) imgs[i] = imgs_[g.imgs_[i]];
  return Permutation(std::move(imgs));
}

Permutation Permutation::inverse() const {
  std::vector<std::uint8_t> imgs(imgs_.size());
  for (std::size_t i = 0; i < imgs.size(); ++i) imgs[imgs_[i]] = static_cast<std::uint8_t>(i);
  return Permutation(std::move(imgs));
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < imgs_.size(); ++i)
    if (imgs_[i] != i) return false;
  return true;
}

long Permutation::order() const {
  long ord = 1;
  std::vector<bool> seen(imgs_.size(), false);
  for (std::size_t i = 0; i < imgs_.size(); ++i) {
    if (seen[i]) continue;
    long len = 0;
    for (std::size_t j = i; !seen[j]; j = imgs_[j]) {
      seen[j] = true;
      ++len;
    }
    ord = std::lcm(ord, len);
  }
  return ord;
}

std::vector<int> Permutation::moved_points() const {
  std::vector<int> pts;
  for (std::size_t i = 0; i < imgs_.size(); ++i)
    if (imgs_[i] != i) pts.push_back(static_cast<int>(i));
  return pts;
}

std::string Permutation::cycle_string() const {
  std::string out;
  std::vector<bool> seen(imgs_.size(), false);
  for (std::size_t i = 0; i < imgs_.size(); ++i) {
    if (seen[i] || imgs_[i] == i) continue;
    out += '(';
    bool first = true;
    for (std::size_t j = i; !seen[j]; j = imgs_[j]) {
      seen[j] = true;
      if (!first) out += ' ';
      out += std::to_string(j + 1);
      first = false;
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

}  // namespace rigidity
