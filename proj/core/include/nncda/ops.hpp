#pragma once

#include "nncda/field.hpp"

namespace nncda {

/// Velocity from a stream function: u = (-d psi/dy, d psi/dx).
VelocityField grad_perp(const SpectralField& psi);

/// Scalar curl of a velocity field, d(u_y)/dx - d(u_x)/dy.
SpectralField curl(const VelocityField& u);

/// Multiplies each mode by -|kappa|^2.
SpectralField laplacian(const SpectralField& f);

/// Mean-free inverse of laplacian().
SpectralField inv_laplacian(const SpectralField& f);

/// Zeroes every mode outside the grid's dealias mask.  Idempotent.
SpectralField dealias(const SpectralField& f);
void dealias_in_place(SpectralField& f);

/// Zeroes modes with integer index magnitude above (keep_low) or at most
/// (keep_low = false) the cutoff m.  The m = 0 low projection is empty
/// because the mean mode is identically zero.
SpectralField project_index_shell(const SpectralField& f, int m, bool keep_low);

}  // namespace nncda
