#pragma once

#include "tewa/baseline_greedy.hpp"
#include "tewa/batch.hpp"
#include "tewa/catalog.hpp"
#include "tewa/document.hpp"
#include "tewa/events.hpp"
#include "tewa/fuzzy.hpp"
#include "tewa/generator.hpp"
#include "tewa/geometry.hpp"
#include "tewa/matching.hpp"
#include "tewa/report.hpp"
#include "tewa/rng.hpp"
#include "tewa/scenario.hpp"
#include "tewa/sim_engine.hpp"
#include "tewa/threat_eval.hpp"
#include "tewa/types.hpp"
#include "tewa/weapon_assign.hpp"
