#pragma once

#include "hsch/field.hpp"

namespace hsch {

// Second-order difference operators on the node/face layout. gradient and
// divergence form an exact adjoint pair under the trapezoid inner products,
// and divergence(gradient(f)) reproduces laplacian(f) for Neumann0 f as an
// operator identity.

// d f / d x_k at the faces of axis k.
VectorField gradient(const ScalarField& f);

// Sum of face differences at nodes; boundary nodes see half cells with the
// structural u·n = 0.
ScalarField divergence(const VectorField& v);

// Compact 3/5-point stencil with ghost values from the bc tag
// (Neumann0: mirror, Dirichlet0: odd reflection).
ScalarField laplacian(const ScalarField& f);

// Two-point average of a node scalar onto the faces of every component
// (returns a face field shaped like a VectorField).
VectorField to_faces(const ScalarField& f);

// div(v * phi_faces): conservative advection flux divergence. Exactly
// mean-free in the trapezoid inner product.
ScalarField advect(const VectorField& v, const ScalarField& phi);

// trapezoid inner products / norms
double dot(const ScalarField& a, const ScalarField& b);
double dot(const VectorField& a, const VectorField& b);
double norm2(const ScalarField& a);
double norm2(const VectorField& a);
double max_abs(const ScalarField& a);
double max_abs(const VectorField& a);
double mean(const ScalarField& f);

// in-place helpers (component-wise; vector versions re-apply pinned rows)
void axpy(double a, const ScalarField& x, ScalarField& y);  // y += a*x
void axpy(double a, const VectorField& x, VectorField& y);
void scale(ScalarField& x, double a);
void scale(VectorField& x, double a);

} // namespace hsch
