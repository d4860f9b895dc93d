#include "phull/substitution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "phull/errors.hpp"

namespace phull {

Substitution::Substitution(Alphabet alphabet, std::vector<Word> images)
    : alphabet_(std::move(alphabet)), images_(std::move(images)) {
  if (images_.size() != alphabet_.size())
    throw InvalidArgument("substitution needs exactly one image per letter");
  for (const auto& img : images_) check_word(img);
}

void Substitution::check_word(const Word& w) const {
  for (Letter l : w.letters())
    if (l >= alphabet_.size()) throw InvalidArgument("letter index outside the alphabet");
}

Word Substitution::apply(const Word& word) const {
  check_word(word);
  std::vector<Letter> out;
  std::size_t total = 0;
  for (Letter l : word.letters()) total += images_[l].size();
  out.reserve(total);
  for (Letter l : word.letters()) {
    auto img = images_[l].letters();
    out.insert(out.end(), img.begin(), img.end());
  }
  return Word(std::move(out));
}

Word Substitution::apply(const Word& word, unsigned times) const {
  Word w = word;
  for (unsigned i = 0; i < times; ++i) w = apply(w);
  return w;
}

Substitution Substitution::power(unsigned n) const {
  std::vector<Word> imgs;
  imgs.reserve(size());
  for (std::size_t a = 0; a < size(); ++a) imgs.push_back(apply(Word{static_cast<Letter>(a)}, n));
  return Substitution(alphabet_, std::move(imgs));
}

std::size_t Substitution::min_image_length() const {
  std::size_t m = std::numeric_limits<std::size_t>::max();
  for (const auto& img : images_) m = std::min(m, img.size());
  return m;
}

std::uint64_t SubstitutionMatrix::column_sum(std::size_t j) const {
  std::uint64_t s = 0;
  for (std::size_t i = 0; i < n_; ++i) s += at(i, j);
  return s;
}

bool SubstitutionMatrix::positive() const {
  return std::all_of(entries_.begin(), entries_.end(), [](auto v) { return v > 0; });
}

SubstitutionMatrix SubstitutionMatrix::identity(std::size_t n) {
  SubstitutionMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

SubstitutionMatrix operator*(const SubstitutionMatrix& a, const SubstitutionMatrix& b) {
  if (a.size() != b.size()) throw InvalidArgument("matrix size mismatch");
  const auto n = a.size();
  SubstitutionMatrix c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const auto aik = a.at(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < n; ++j) c.at(i, j) += aik * b.at(k, j);
    }
  return c;
}

SubstitutionMatrix matrix(const Substitution& s) {
  SubstitutionMatrix m(s.size());
  for (std::size_t j = 0; j < s.size(); ++j)
    for (Letter l : s.image(static_cast<Letter>(j)).letters()) ++m.at(l, j);
  return m;
}

std::optional<unsigned> primitivity_exponent(const Substitution& s) {
  const auto n = s.size();
  const auto m = matrix(s);
  // Positivity pattern only; entry values are irrelevant and would overflow.
  std::vector<char> base(n * n), cur(n * n), next(n * n);
  for (std::size_t i = 0; i < n * n; ++i) base[i] = m.at(i / n, i % n) > 0;
  cur = base;
  const unsigned wielandt = static_cast<unsigned>((n - 1) * (n - 1) + 1);
  for (unsigned p = 1; p <= wielandt; ++p) {
    if (std::all_of(cur.begin(), cur.end(), [](char c) { return c != 0; })) return p;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        char v = 0;
        for (std::size_t k = 0; k < n && !v; ++k) v = cur[i * n + k] && base[k * n + j];
        next[i * n + j] = v;
      }
    std::swap(cur, next);
  }
  return std::nullopt;
}

std::vector<BigInt> image_lengths(const Substitution& s, unsigned n) {
  const auto size = s.size();
  const auto m = matrix(s);
  // row vector 1ᵀ M^k
  std::vector<BigInt> row(size, 1), next(size);
  for (unsigned k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < size; ++j) {
      BigInt acc = 0;
      for (std::size_t i = 0; i < size; ++i)
        if (auto e = m.at(i, j)) acc += row[i] * e;
      next[j] = std::move(acc);
    }
    std::swap(row, next);
  }
  return row;
}

PerronData perron(const Substitution& s, unsigned horizon, double tol) {
  if (!(tol > 0)) throw InvalidArgument("perron tolerance must be positive");
  auto p = primitivity_exponent(s);
  if (!p) throw InvalidArgument("substitution is not primitive");

  const auto n = s.size();
  const auto m = matrix(s);
  std::vector<double> x(n, 1.0), y(n);
  PerronData out;
  out.primitivity_exponent = *p;
  out.horizon = horizon;
  out.tolerance = tol;

  constexpr unsigned kMaxIterations = 100000;
  double lo = 0, hi = 0;
  bool converged = false;
  for (unsigned it = 1; it <= kMaxIterations; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0;
      for (std::size_t j = 0; j < n; ++j) acc += static_cast<double>(m.at(i, j)) * x[j];
      y[i] = acc;
    }
    lo = std::numeric_limits<double>::infinity();
    hi = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = y[i] / x[i];
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    const double scale = *std::max_element(y.begin(), y.end());
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / scale;
    out.iterations = it;
    if (hi - lo <= tol) {
      converged = true;
      break;
    }
  }
  if (!converged) throw NumericError("power iteration did not reach tolerance");
  out.theta = 0.5 * (lo + hi);

  out.c_hat = 0;
  out.c_check = std::numeric_limits<double>::infinity();
  std::vector<BigInt> row(n, 1), next(n);
  double theta_pow = 1.0;
  for (unsigned k = 0; k <= horizon; ++k) {
    if (k > 0) {
      for (std::size_t j = 0; j < n; ++j) {
        BigInt acc = 0;
        for (std::size_t i = 0; i < n; ++i)
          if (auto e = m.at(i, j)) acc += row[i] * e;
        next[j] = std::move(acc);
      }
      std::swap(row, next);
      theta_pow *= out.theta;
    }
    for (std::size_t j = 0; j < n; ++j) {
      const double ratio = row[j].convert_to<double>() / theta_pow;
      out.c_hat = std::max(out.c_hat, ratio);
      out.c_check = std::min(out.c_check, ratio);
    }
  }
  return out;
}

}  // namespace phull
