#pragma once

#include "aqrsm/errors.hpp"
#include "aqrsm/operators.hpp"
#include "aqrsm/spectrum.hpp"
#include "aqrsm/eigenbasis.hpp"
#include "aqrsm/dissipation.hpp"
#include "aqrsm/observables.hpp"
#include "aqrsm/pipeline.hpp"
#include "aqrsm/sweep.hpp"
#include "aqrsm/io/format.hpp"
#include "aqrsm/io/heatmap.hpp"
#include "aqrsm/io/config.hpp"
#include "aqrsm/cli.hpp"
