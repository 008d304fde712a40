#ifndef CACSIM_QFUNC_HPP
#define CACSIM_QFUNC_HPP

namespace cacsim {

// Upper-tail probability of the standard normal, Q(x) = P{Z >= x}.
// Absolute error below 1e-12 over the whole real line.
// Throws std::domain_error on non-finite input.
double q_function(double x);

// Inverse of q_function on (0, 1), by bisection. Q(q_inverse(p)) == p to
// ~1e-13. Throws std::domain_error for p outside (0, 1).
double q_inverse(double p);

} // namespace cacsim

#endif
