#pragma once

#include "qmoat/bench.hpp"
#include "qmoat/delaunay.hpp"
#include "qmoat/density.hpp"
#include "qmoat/format.hpp"
#include "qmoat/lattice_region.hpp"
#include "qmoat/moatfinder.hpp"
#include "qmoat/predicates.hpp"
#include "qmoat/primality.hpp"
#include "qmoat/quadring.hpp"
#include "qmoat/spanning_tree.hpp"
#include "qmoat/svg.hpp"
#include "qmoat/union_find.hpp"
