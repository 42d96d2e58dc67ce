#ifndef FBOSC_LAGUERRE_HPP
#define FBOSC_LAGUERRE_HPP

namespace fbosc {

// Generalized Laguerre polynomial L_n^alpha(x) for alpha > -1, x >= 0,
// by the upward three-term recurrence
//   (n+1) L_{n+1}^a = (2n+1+a-x) L_n^a - (n+a) L_{n-1}^a.
double laguerre(int n, double alpha, double x);

// dL_n^alpha/dx = -L_{n-1}^{alpha+1} (exact identity, no differencing).
double laguerre_derivative(int n, double alpha, double x);

}  // namespace fbosc

#endif
