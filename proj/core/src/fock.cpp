#include "focklab/fock.hpp"

#include <algorithm>
#include <numeric>

namespace focklab {

std::string Word::str() const {
  if (letters.empty()) return "e";
  std::string s;
  for (size_t i = 0; i < letters.size(); ++i) {
    if (i) s += '.';
    s += std::to_string(letters[i]);
  }
  return s;
}

Word concat(const Word& mu, const Word& w) {
  Word out = mu;
  out.letters.insert(out.letters.end(), w.letters.begin(), w.letters.end());
  return out;
}

Word reverse(const Word& mu) {
  Word out = mu;
  std::reverse(out.letters.begin(), out.letters.end());
  return out;
}

bool leq_left(const Word& nu, const Word& mu) {
  if (nu.length() > mu.length()) return false;
  return std::equal(nu.letters.rbegin(), nu.letters.rend(),
                    mu.letters.rbegin());
}

bool leq_right(const Word& nu, const Word& mu) {
  if (nu.length() > mu.length()) return false;
  return std::equal(nu.letters.begin(), nu.letters.end(), mu.letters.begin());
}

int MultiIndex::degree() const {
  return std::accumulate(coords.begin(), coords.end(), 0);
}

std::string MultiIndex::str() const {
  std::string s = "(";
  for (size_t i = 0; i < coords.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(coords[i]);
  }
  return s + ")";
}

MultiIndex add(const MultiIndex& a, const MultiIndex& b) {
  if (a.dim() != b.dim())
    throw Error(ErrorKind::InvalidParameter, "multi-index dimension mismatch");
  MultiIndex out = a;
  for (int i = 0; i < b.dim(); ++i) out.coords[i] += b.coords[i];
  return out;
}

bool leq_multi(const MultiIndex& n, const MultiIndex& m) {
  if (n.dim() != m.dim()) return false;
  for (int i = 0; i < n.dim(); ++i)
    if (n.coords[i] > m.coords[i]) return false;
  return true;
}

namespace {

void check_params(int d, int L) {
  if (d < 1) throw Error(ErrorKind::InvalidParameter, "alphabet size d must be >= 1");
  if (L < 0) throw Error(ErrorKind::InvalidParameter, "truncation degree L must be >= 0");
}

void free_words_of_length(int d, int len, std::vector<Word>& out) {
  Word w;
  w.letters.assign(len, 1);
  while (true) {
    out.push_back(w);
    int i = len - 1;
    while (i >= 0 && w.letters[i] == d) w.letters[i--] = 1;
    if (i < 0) break;
    ++w.letters[i];
  }
}

void multis_up_to(int d, int degree_cap, int per_axis_cap,
                  std::vector<MultiIndex>& out) {
  MultiIndex m;
  m.coords.assign(d, 0);
  // odometer-style enumeration of the box, filtered by total degree
  while (true) {
    if (m.degree() <= degree_cap) out.push_back(m);
    int i = d - 1;
    while (i >= 0 && m.coords[i] == per_axis_cap) m.coords[i--] = 0;
    if (i < 0) break;
    ++m.coords[i];
  }
  std::sort(out.begin(), out.end());
}

}  // namespace

std::shared_ptr<const TruncatedFock> TruncatedFock::free(int d, int L) {
  check_params(d, L);
  auto f = std::shared_ptr<TruncatedFock>(new TruncatedFock());
  f->kind_ = SemigroupKind::Free;
  f->d_ = d;
  f->max_degree_ = L;
  for (int len = 0; len <= L; ++len) free_words_of_length(d, len, f->words_);
  for (int i = 0; i < static_cast<int>(f->words_.size()); ++i) {
    f->degrees_.push_back(f->words_[i].length());
    f->index_[f->words_[i].letters] = i;
  }
  return f;
}

std::shared_ptr<const TruncatedFock> TruncatedFock::abelian(int d, int L) {
  check_params(d, L);
  auto f = std::shared_ptr<TruncatedFock>(new TruncatedFock());
  f->kind_ = SemigroupKind::Abelian;
  f->d_ = d;
  f->max_degree_ = L;
  multis_up_to(d, L, L, f->multis_);
  for (int i = 0; i < static_cast<int>(f->multis_.size()); ++i) {
    f->degrees_.push_back(f->multis_[i].degree());
    f->index_[f->multis_[i].coords] = i;
  }
  return f;
}

std::shared_ptr<const TruncatedFock> TruncatedFock::abelian_rect(int d, int cap) {
  check_params(d, cap);
  auto f = std::shared_ptr<TruncatedFock>(new TruncatedFock());
  f->kind_ = SemigroupKind::Abelian;
  f->d_ = d;
  f->max_degree_ = d * cap;
  f->rect_cap_ = cap;
  multis_up_to(d, d * cap, cap, f->multis_);
  for (int i = 0; i < static_cast<int>(f->multis_.size()); ++i) {
    f->degrees_.push_back(f->multis_[i].degree());
    f->index_[f->multis_[i].coords] = i;
  }
  return f;
}

const Word& TruncatedFock::word(int i) const {
  if (kind_ != SemigroupKind::Free)
    throw Error(ErrorKind::InvalidParameter, "word() on abelian basis");
  return words_.at(i);
}

const MultiIndex& TruncatedFock::multi(int i) const {
  if (kind_ != SemigroupKind::Abelian)
    throw Error(ErrorKind::InvalidParameter, "multi() on free basis");
  return multis_.at(i);
}

int TruncatedFock::index(const Word& w) const {
  int i = find(w);
  if (i < 0) throw Error(ErrorKind::IndexError, "word " + w.str() + " outside truncation");
  return i;
}

int TruncatedFock::index(const MultiIndex& m) const {
  int i = find(m);
  if (i < 0) throw Error(ErrorKind::IndexError, "multi-index " + m.str() + " outside truncation");
  return i;
}

int TruncatedFock::find(const Word& w) const {
  if (kind_ != SemigroupKind::Free) return -1;
  auto it = index_.find(w.letters);
  return it == index_.end() ? -1 : it->second;
}

int TruncatedFock::find(const MultiIndex& m) const {
  if (kind_ != SemigroupKind::Abelian) return -1;
  auto it = index_.find(m.coords);
  return it == index_.end() ? -1 : it->second;
}

}  // namespace focklab
