#pragma once

#include "qgraph/commands.hpp"
#include "qgraph/corpus.hpp"
#include "qgraph/eigenfunction.hpp"
#include "qgraph/errors.hpp"
#include "qgraph/graph.hpp"
#include "qgraph/graph_file.hpp"
#include "qgraph/magnetic.hpp"
#include "qgraph/oracles.hpp"
#include "qgraph/report.hpp"
#include "qgraph/secular.hpp"
#include "qgraph/solver.hpp"
#include "qgraph/verify.hpp"
