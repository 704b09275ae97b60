#include "xops/sturm.hpp"

#include <stdexcept>
#include <vector>

namespace xops {

namespace {

// sign of p at a finite point or at +/- infinity
int sign_at(const Poly& p, const Endpoint& e) {
  if (p.is_zero()) return 0;
  if (e.is_finite()) return p.eval(*e.value).sign();
  int lead = p.leading().sign();
  if (e.infinity_sign > 0) return lead;
  return (p.degree() % 2 == 0) ? lead : -lead;
}

int sign_variations(const std::vector<Poly>& chain, const Endpoint& e) {
  int var = 0, prev = 0;
  for (const auto& q : chain) {
    int s = sign_at(q, e);
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++var;
    prev = s;
  }
  return var;
}

}  // namespace

int count_roots_closed(const Poly& p_in, const Endpoint& lo, const Endpoint& hi) {
  if (p_in.is_zero()) throw std::invalid_argument("root count of zero polynomial");
  if (p_in.degree() == 0) return 0;
  // squarefree part: multiplicities do not matter for distinct-root counts
  Poly p = p_in.divide_exact(gcd(p_in, p_in.derivative()));
  int endpoint_roots = 0;
  if (lo.is_finite() && p.eval(*lo.value).is_zero()) ++endpoint_roots;
  if (hi.is_finite() && p.eval(*hi.value).is_zero()) {
    if (!(lo.is_finite() && *lo.value == *hi.value)) ++endpoint_roots;
  }
  // deflate endpoint roots so Sturm counting sees interior roots only
  if (lo.is_finite() && p.eval(*lo.value).is_zero())
    p = p.divide_exact(Poly({-*lo.value, Scalar(1)}));
  if (hi.is_finite() && !p.is_constant() && p.eval(*hi.value).is_zero())
    p = p.divide_exact(Poly({-*hi.value, Scalar(1)}));
  if (p.degree() <= 0) return endpoint_roots;

  std::vector<Poly> chain{p, p.derivative()};
  while (!chain.back().is_zero() && chain.back().degree() > 0) {
    auto [q, r] = Poly::divmod(chain[chain.size() - 2], chain.back());
    if (r.is_zero()) break;
    Poly next = -r;
    // scale by a positive constant only; signs carry the information
    Scalar lc = next.leading();
    if (lc.sign() < 0) lc = -lc;
    chain.push_back(next / lc);
  }
  int interior = sign_variations(chain, lo) - sign_variations(chain, hi);
  if (interior < 0) interior = 0;
  return endpoint_roots + interior;
}

}  // namespace xops
