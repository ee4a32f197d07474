#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace focklab {

enum class ErrorKind {
  InvalidParameter,
  IndexError,
  NotInAlgebra,
  InsufficientWindow,
  InvalidAlgebra,
  ParseError,
  UnknownName,
  IoError,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// A word over the alphabet {1..d}, letters stored in reading order.
// The empty word is the semigroup unit.
struct Word {
  std::vector<int> letters;

  int length() const { return static_cast<int>(letters.size()); }
  bool empty() const { return letters.empty(); }
  bool operator==(const Word&) const = default;
  bool operator<(const Word& o) const {
    if (letters.size() != o.letters.size())
      return letters.size() < o.letters.size();
    return letters < o.letters;  // degree-major, then lexicographic
  }
  std::string str() const;
};

Word concat(const Word& mu, const Word& w);  // mu written on the left
Word reverse(const Word& mu);

// nu <=_l mu  iff  mu = z nu for some word z (nu is a suffix of mu).
bool leq_left(const Word& nu, const Word& mu);
// nu <=_r mu  iff  mu = nu z for some word z (nu is a prefix of mu).
bool leq_right(const Word& nu, const Word& mu);

// An element of Z_+^d.
struct MultiIndex {
  std::vector<int> coords;

  int dim() const { return static_cast<int>(coords.size()); }
  int degree() const;
  bool operator==(const MultiIndex&) const = default;
  bool operator<(const MultiIndex& o) const {
    if (degree() != o.degree()) return degree() < o.degree();
    return coords < o.coords;
  }
  std::string str() const;
};

MultiIndex add(const MultiIndex& a, const MultiIndex& b);
// componentwise order on Z_+^d
bool leq_multi(const MultiIndex& n, const MultiIndex& m);

enum class SemigroupKind { Free, Abelian };

// Ordered basis of a truncated Fock space: all words (free kind) or
// multi-indices (abelian kind) of degree <= L, ordered degree-major then
// lexicographically.  Immutable after construction.
class TruncatedFock {
 public:
  static std::shared_ptr<const TruncatedFock> free(int d, int L);
  static std::shared_ptr<const TruncatedFock> abelian(int d, int L);
  // All multi-indices with every coordinate <= cap (so degree up to d*cap);
  // same ordering.  Used for tensor-splitting abelian truncations.
  static std::shared_ptr<const TruncatedFock> abelian_rect(int d, int cap);

  SemigroupKind kind() const { return kind_; }
  int alphabet_size() const { return d_; }
  int max_degree() const { return max_degree_; }
  bool rectangular() const { return rect_cap_ >= 0; }
  int rect_cap() const { return rect_cap_; }
  int size() const { return static_cast<int>(degrees_.size()); }

  const Word& word(int i) const;
  const MultiIndex& multi(int i) const;
  int degree(int i) const { return degrees_[i]; }

  int index(const Word& w) const;        // throws IndexError when absent
  int index(const MultiIndex& m) const;
  int find(const Word& w) const;         // -1 when absent
  int find(const MultiIndex& m) const;

  const std::vector<Word>& words() const { return words_; }
  const std::vector<MultiIndex>& multis() const { return multis_; }

 private:
  TruncatedFock() = default;

  SemigroupKind kind_ = SemigroupKind::Free;
  int d_ = 0;
  int max_degree_ = 0;
  int rect_cap_ = -1;
  std::vector<Word> words_;
  std::vector<MultiIndex> multis_;
  std::vector<int> degrees_;
  std::map<std::vector<int>, int> index_;
};

using FockPtr = std::shared_ptr<const TruncatedFock>;

}  // namespace focklab
