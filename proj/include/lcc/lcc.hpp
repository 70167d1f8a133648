#pragma once

#include "lcc/error.hpp"
#include "lcc/config.hpp"
#include "lcc/causal_dag.hpp"
#include "lcc/trace.hpp"
#include "lcc/admissibility.hpp"
#include "lcc/enumerate.hpp"
#include "lcc/readability.hpp"
#include "lcc/globality.hpp"
#include "lcc/merge.hpp"
#include "lcc/ratchet.hpp"
#include "lcc/scars.hpp"
#include "lcc/clocks.hpp"
#include "lcc/sim.hpp"
#include "lcc/frontier.hpp"
#include "lcc/selector.hpp"
#include "lcc/glossary.hpp"
#include "lcc/burckhardt.hpp"
