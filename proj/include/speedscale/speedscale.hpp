#pragma once

#include "speedscale/core.hpp"
#include "speedscale/policies.hpp"
#include "speedscale/min_cost_flow.hpp"
#include "speedscale/offline.hpp"
#include "speedscale/report.hpp"
#include "speedscale/adversary.hpp"
#include "speedscale/lower_bound.hpp"
#include "speedscale/random_instances.hpp"
#include "speedscale/verify.hpp"
#include "speedscale/sweep.hpp"
#include "speedscale/io.hpp"
