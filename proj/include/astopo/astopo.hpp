#pragma once

#include "astopo/asn.hpp"
#include "astopo/betweenness.hpp"
#include "astopo/clustering.hpp"
#include "astopo/compare.hpp"
#include "astopo/degree.hpp"
#include "astopo/distance.hpp"
#include "astopo/error.hpp"
#include "astopo/fit.hpp"
#include "astopo/graph.hpp"
#include "astopo/ingest.hpp"
#include "astopo/jdd.hpp"
#include "astopo/report.hpp"
#include "astopo/run.hpp"
#include "astopo/spectrum.hpp"
#include "astopo/summary.hpp"
