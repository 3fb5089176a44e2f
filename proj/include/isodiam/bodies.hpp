#pragma once

#include <string>

#include "isodiam/polytope.hpp"

namespace isodiam {

Polytope make_cube(int n);                   // [-1, 1]^n
Polytope make_crosspolytope(int n);          // conv{+-e_i}
Polytope make_regular_simplex(int n);        // circumcenter 0, circumradius 1
Polytope make_icosahedron();                 // circumradius 1
Polytope make_sailing_boat(double r);        // sqrt(3)/2 < r <= 1
Polytope make_septagon(double eps);          // 0 < eps <= 0.1
Polytope make_triangle(double r);            // conv{(0,1), (+-sqrt(1-r^2), -r)}

// dispatcher for the CLI: kind in {cube, crosspolytope, regular_simplex,
// icosahedron, sailing_boat, septagon, triangle}; param is n or r/eps
Polytope make_body(const std::string& kind, double param);

}  // namespace isodiam
