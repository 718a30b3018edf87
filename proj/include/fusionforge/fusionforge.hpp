#pragma once

// Umbrella header.

#include "fusionforge/biset.hpp"
#include "fusionforge/blueprint.hpp"
#include "fusionforge/character.hpp"
#include "fusionforge/cyclo.hpp"
#include "fusionforge/fusion.hpp"
#include "fusionforge/gamma.hpp"
#include "fusionforge/group.hpp"
#include "fusionforge/homs.hpp"
#include "fusionforge/json_io.hpp"
#include "fusionforge/lattice.hpp"
#include "fusionforge/limits.hpp"
#include "fusionforge/pipeline.hpp"
#include "fusionforge/report.hpp"
#include "fusionforge/tilde.hpp"
