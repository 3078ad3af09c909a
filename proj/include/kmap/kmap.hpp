#pragma once

// Umbrella header: the whole library.

#include "kmap/circuit.hpp"
#include "kmap/concept_net.hpp"
#include "kmap/errors.hpp"
#include "kmap/impulse.hpp"
#include "kmap/kmatrix.hpp"
#include "kmap/numerics.hpp"
#include "kmap/pathfinder.hpp"
#include "kmap/ranking.hpp"
