#pragma once

// Umbrella header.

#include "bipmap/census.hpp"
#include "bipmap/group.hpp"
#include "bipmap/labelling.hpp"
#include "bipmap/map_ops.hpp"
#include "bipmap/nu_formula.hpp"
#include "bipmap/numthy.hpp"
#include "bipmap/oracle.hpp"
#include "bipmap/oriented_map.hpp"
#include "bipmap/prime_digraph.hpp"
#include "bipmap/prime_power.hpp"
