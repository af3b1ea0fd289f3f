#pragma once

#include "domelim/ars.hpp"
#include "domelim/best_response.hpp"
#include "domelim/dominance.hpp"
#include "domelim/error.hpp"
#include "domelim/game.hpp"
#include "domelim/game_io.hpp"
#include "domelim/lp.hpp"
#include "domelim/persistence.hpp"
#include "domelim/random.hpp"
#include "domelim/rational.hpp"
#include "domelim/reduction.hpp"
#include "domelim/rng.hpp"
#include "domelim/trace_io.hpp"
