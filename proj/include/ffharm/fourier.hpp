#pragma once

#include "ffharm/grid.hpp"
#include "ffharm/variety.hpp"

namespace ffharm {

// All transforms are axis-separated dense passes: d passes of q x q
// character sums, O(d q^{d+1}) total, parallel over the q^{d-1} lines of
// each pass. The measure bookkeeping follows the side tags:
//
//   transform_dual    g(dm)  -> ghat(dx):   sum_m chi(-m.x) g(m)
//   transform_primal  f(dx)  -> fhat(dm):   q^-d sum_x chi(-x.m) f(x)
//   inverse_transform g(dm)  -> f(dx):      sum_m chi(+m.x) g(m)
//   cotransform_primal f(dx) -> fvee(dm):   q^-d sum_x chi(+x.m) f(x)
//
// The last one inverts transform_dual and realizes the ( . )^vee maps.
GridFunction transform_dual(const GridFunction& g);
GridFunction transform_primal(const GridFunction& f);
GridFunction inverse_transform(const GridFunction& g);
GridFunction cotransform_primal(const GridFunction& f);

// Convolution on matching sides via transform-multiply-invert:
//   primal: (f*h)(x) = q^-d sum_y f(x-y) h(y)
//   dual:   (g*k)(m) = sum_{m'} g(m-m') k(m')
GridFunction convolve(const GridFunction& f, const GridFunction& h);

// (d sigma)^vee by direct summation over S: |S|^-1 sum_{x in S} chi(x.m).
// Cost |S| * q^d; parallel over m. This is the definitional route kept as
// an oracle against the closed form and the transform route.
GridFunction sigma_inv_bruteforce(const Variety& v);

// (d sigma)^vee through the axis-pass transform of the surface density.
GridFunction sigma_inv_transform(const Variety& v);

// Closed form (diagonal forms; even/odd split through Gauss sums). The
// distinction is driven by the dual form Q*(m) = sum m_j^2 / a_j.
GridFunction sigma_inv_closed_form(const Variety& v);

// max over m != 0 of |(d sigma)^vee(m)| predicted by the closed form:
//   odd d:  q^{-(d-1)/2}
//   even d: q^{d/2-1}(q-1)/|S| when {m != 0 : Q*(m)=0} is nonempty,
//           q^{d/2-1}/|S| otherwise
double sigma_inv_predicted_max(const Variety& v);

}
