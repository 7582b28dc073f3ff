#include "soergel/perm.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace soergel {

Perm::Perm(std::vector<int> images) : w_(std::move(images)) {
  std::vector<bool> seen(w_.size() + 1, false);
  for (int v : w_) {
    if (v < 1 || v > size() || seen[v]) throw std::invalid_argument("not a permutation in one-line notation");
    seen[v] = true;
  }
}

Perm Perm::identity(int m) {
  std::vector<int> w(m);
  for (int k = 0; k < m; ++k) w[k] = k + 1;
  return Perm(std::move(w));
}

Perm Perm::simple(int i, int m) {
  if (i < 1 || i >= m) throw std::invalid_argument("simple reflection index out of range");
  return identity(m).times_simple(i);
}

int Perm::length() const {
  int inv = 0;
  for (int a = 0; a < size(); ++a)
    for (int b = a + 1; b < size(); ++b)
      if (w_[a] > w_[b]) ++inv;
  return inv;
}

bool Perm::is_identity() const {
  for (int k = 0; k < size(); ++k)
    if (w_[k] != k + 1) return false;
  return true;
}

Perm Perm::inverse() const {
  std::vector<int> inv(w_.size());
  for (int k = 0; k < size(); ++k) inv[w_[k] - 1] = k + 1;
  Perm p;
  p.w_ = std::move(inv);
  return p;
}

Perm Perm::operator*(const Perm& w) const {
  if (w.size() != size()) throw std::invalid_argument("composing permutations of different sizes");
  Perm p;
  p.w_.resize(w_.size());
  for (int k = 0; k < size(); ++k) p.w_[k] = w_[w.w_[k] - 1];
  return p;
}

Perm Perm::times_simple(int i) const {
  if (i < 1 || i >= size()) throw std::invalid_argument("simple reflection index out of range");
  Perm p = *this;
  std::swap(p.w_[i - 1], p.w_[i]);
  return p;
}

std::vector<int> Perm::reduced_word() const {
  // Peel right descents: w = w' s_i with l(w') = l(w) - 1.
  std::vector<int> word;
  Perm cur = *this;
  for (bool found = true; found;) {
    found = false;
    for (int i = 1; i < size(); ++i) {
      if (cur.has_right_descent(i)) {
        word.push_back(i);
        cur = cur.times_simple(i);
        found = true;
        break;
      }
    }
  }
  std::reverse(word.begin(), word.end());
  return word;
}

std::string Perm::str() const {
  std::string s = "[";
  for (int k = 0; k < size(); ++k) {
    if (k) s += ",";
    s += std::to_string(w_[k]);
  }
  return s + "]";
}

Perm Perm::parse(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.size() < 2 || s.front() != '[' || s.back() != ']')
    throw std::invalid_argument("permutation must look like [2,1,3]");
  std::vector<int> w;
  std::string body = s.substr(1, s.size() - 2);
  size_t p = 0;
  while (p < body.size()) {
    size_t q = body.find(',', p);
    if (q == std::string::npos) q = body.size();
    std::string item = body.substr(p, q - p);
    if (item.empty() || !std::all_of(item.begin(), item.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      throw std::invalid_argument("bad permutation entry '" + item + "'");
    w.push_back(std::stoi(item));
    p = q + 1;
  }
  return Perm(std::move(w));
}

}  // namespace soergel
