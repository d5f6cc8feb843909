#pragma once

#include "dagic/annotations.hpp"
#include "dagic/benchmark.hpp"
#include "dagic/bit_matrix.hpp"
#include "dagic/error.hpp"
#include "dagic/ic_metrics.hpp"
#include "dagic/obo.hpp"
#include "dagic/ontology.hpp"
#include "dagic/semsim.hpp"
