#include "pcalc/rational.hpp"

#include <cctype>

namespace pcalc {

Rat rat(long num, long den) {
  if (den == 0) throw parse_error("rational with zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

long floor_rat(const Rat& q) {
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  if (!fl.fits_slong_p()) throw internal_error("floor out of machine range");
  return fl.get_si();
}

Rat frac_rat(const Rat& q) { return q - floor_rat(q); }

bool is_integer(const Rat& q) { return q.get_den() == 1; }

std::string to_string(const Rat& q) { return q.get_str(); }

Rat parse_rat(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw parse_error("empty rational literal");
  // mpq_set_str is permissive about garbage; validate the shape first.
  std::size_t i = 0;
  auto digits = [&](std::size_t from) {
    std::size_t j = from;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    return j;
  };
  if (s[i] == '+' || s[i] == '-') ++i;
  std::size_t j = digits(i);
  if (j == i) throw parse_error("malformed rational '" + text + "'");
  if (j < s.size()) {
    if (s[j] != '/') throw parse_error("malformed rational '" + text + "'");
    std::size_t k = digits(j + 1);
    if (k == j + 1 || k != s.size()) throw parse_error("malformed rational '" + text + "'");
  }
  if (s[0] == '+') s.erase(0, 1);  // mpq_set_str takes '-' but not '+'
  Rat q;
  if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0)
    throw parse_error("malformed rational '" + text + "'");
  if (q.get_den() == 0) throw parse_error("zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

GaussRat operator/(const GaussRat& a, const GaussRat& b) {
  Rat n = b.re * b.re + b.im * b.im;
  if (n == 0) throw error("division by zero in Q(i)");
  return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}

std::string to_string(const GaussRat& z) {
  if (z.im == 0) return to_string(z.re);
  std::string s = to_string(z.re);
  s += (z.im < 0) ? '-' : '+';
  Rat a = abs(z.im);
  s += to_string(a);
  s += " i";
  return s;
}

GaussRat parse_gauss(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw parse_error("empty scalar literal");
  bool has_i = !s.empty() && s.back() == 'i';
  if (!has_i) return {parse_rat(s), Rat(0)};
  s.pop_back();
  // Split at the last top-level sign that separates re from im.
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != '/' && s[k - 1] != '+' && s[k - 1] != '-') {
      split = k;
      break;
    }
  }
  auto im_part = [&](std::string t) -> Rat {
    if (t.empty() || t == "+") return Rat(1);
    if (t == "-") return Rat(-1);
    return parse_rat(t);
  };
  if (split == std::string::npos) return {Rat(0), im_part(s)};
  return {parse_rat(s.substr(0, split)), im_part(s.substr(split))};
}

}  // namespace pcalc
