#pragma once

// Umbrella header.

#include "qtoric/error.hpp"
#include "qtoric/lattice.hpp"
#include "qtoric/rational.hpp"
#include "qtoric/polytope.hpp"
#include "qtoric/quasitoric.hpp"
#include "qtoric/cohomology.hpp"
#include "qtoric/oracle.hpp"
#include "qtoric/gkm.hpp"
#include "qtoric/families.hpp"
#include "qtoric/document.hpp"
