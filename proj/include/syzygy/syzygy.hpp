#pragma once

// Exact module theory over finite-dimensional commutative local algebras:
// minimal free resolutions, (co)syzygies, Krull-Remak-Schmidt decomposition,
// and torsion certificates in the associated Laurent-polynomial module.

#include "syzygy/algebra.hpp"
#include "syzygy/decomp.hpp"
#include "syzygy/errors.hpp"
#include "syzygy/fp.hpp"
#include "syzygy/jmodule.hpp"
#include "syzygy/laurent.hpp"
#include "syzygy/matrix.hpp"
#include "syzygy/module.hpp"
#include "syzygy/resolution.hpp"
