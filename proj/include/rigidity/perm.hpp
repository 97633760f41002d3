#ifndef RIGIDITY_PERM_HPP
#define RIGIDITY_PERM_HPP

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace rigidity {

// A permutation of {0,...,degree-1}, stored as the image sequence.
// All text I/O (cycle strings) uses 1-based point labels.
class Permutation {
public:
  Permutation() = default;

  static Permutation identity(int degree);
  // Validates that imgs is a bijection on {0..degree-1}.
  static Permutation from_images(std::vector<std::uint8_t> imgs);
  // Parses disjoint-cycle notation with 1-based labels, e.g. "(1 2)(3 4)".
  // "()" and "e" denote the identity.
  static Permutation from_cycle_string(std::string_view text, int degree);

  int degree() const { return static_cast<int>(imgs_.size()); }
  int operator()(int i) const { return imgs_[static_cast<std::size_t>(i)]; }

  // (f.after(g))(x) == f(g(x))
  Permutation after(const Permutation& g) const;
  Permutation inverse() const;

  bool is_identity() const;
  long order() const;
  std::vector<int> moved_points() const;
  std::string cycle_string() const;

  const std::vector<std::uint8_t>& images() const { return imgs_; }

  auto operator<=>(const Permutation&) const = default;

private:
  explicit Permutation(std::vector<std::uint8_t> imgs) : imgs_(std::move(imgs)) {}
  std::vector<std::uint8_t> imgs_;
};

}  // namespace rigidity

#endif
