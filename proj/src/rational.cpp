#include "feec/rational.hpp"

#include <stdexcept>

std::string feec::to_string(const Rational& q)
{
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

feec::Rational feec::parse_rational(std::string_view text)
{
  std::string s(text);
  const auto slash = s.find('/');
  mpz_class num, den = 1;
  auto parse_int = [](const std::string& part, mpz_class& out)
  {
    if (part.empty() or out.set_str(part, 10) != 0)
      throw std::invalid_argument("malformed rational: " + part);
  };
  if (slash == std::string::npos)
    parse_int(s, num);
  else
  {
    parse_int(s.substr(0, slash), num);
    parse_int(s.substr(slash + 1), den);
    if (den == 0)
      throw std::invalid_argument("zero denominator in rational");
  }
  Rational q(num, den);
  q.canonicalize();
  return q;
}

feec::Rational feec::make_rational(long num, long den)
{
  if (den == 0)
    throw std::invalid_argument("zero denominator in rational");
  Rational q(num, den);
  q.canonicalize();
  return q;
}
