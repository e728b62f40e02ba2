#ifndef PPOLY_ROOTS_HPP
#define PPOLY_ROOTS_HPP

// Simultaneous multiprecision root finding (Aberth iteration) plus the
// root-geometry classification used for the unit-circle conjecture checks.

#include "ppoly/real.hpp"
#include "ppoly/periodpoly.hpp"
#include <vector>
#include <cstdint>

namespace ppoly {

struct RootInfo {
    Complex z;
    Real err;                      // a-posteriori radius deg |p(z)|/|p'(z)|
};

// all deg(p) roots; coefficients ascending; exact zero leading/trailing
// coefficients are deflated (origin roots are returned with zero radius)
std::vector<RootInfo> find_roots(const std::vector<Complex>& p, unsigned P);

enum class RootLabel : std::uint8_t { origin, circle, quadruple, unclassified };

struct RootReport {
    std::vector<RootInfo> roots;
    std::vector<RootLabel> labels;
    unsigned n_origin = 0, n_circle = 0, n_quadruple = 0, n_unclassified = 0;
    Real a;                        // quadruple member > 1 (0 when absent)
    Real max_circle_dev;           // max | |z|-1 | over circle-labeled roots
    Real tol;
    std::vector<unsigned> ambiguous;   // indices within tol of two categories
};

RootReport classify(const std::vector<RootInfo>& roots, const Real& tol);

struct DiskCheck {
    bool inside = false;           // every root has |z| <= 1 + tol
    Real witness;                  // max |root|
    Complex at;
};

DiskCheck unit_disk_check(const PeriodPolynomial& q, const Real& tol);

} // namespace ppoly

#endif
