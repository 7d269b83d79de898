#pragma once

#include "scorectl/errors.hpp"
#include "scorectl/integer.hpp"
#include "scorectl/election.hpp"
#include "scorectl/rules.hpp"
#include "scorectl/matching.hpp"
#include "scorectl/manipulation.hpp"
#include "scorectl/flow.hpp"
#include "scorectl/outcome.hpp"
#include "scorectl/three_dm.hpp"
#include "scorectl/oracles.hpp"
#include "scorectl/bribery.hpp"
#include "scorectl/ccdv.hpp"
#include "scorectl/reductions.hpp"
#include "scorectl/solve.hpp"
