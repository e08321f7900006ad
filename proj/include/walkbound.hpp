#pragma once

#include "walkbound/analysis.hpp"
#include "walkbound/error.hpp"
#include "walkbound/generators.hpp"
#include "walkbound/graph.hpp"
#include "walkbound/oracle.hpp"
#include "walkbound/walk.hpp"
