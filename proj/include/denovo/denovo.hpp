#ifndef DENOVO_DENOVO_HPP
#define DENOVO_DENOVO_HPP

#include "denovo/graph.hpp"
#include "denovo/mass.hpp"
#include "denovo/modfinder.hpp"
#include "denovo/pipeline.hpp"
#include "denovo/report.hpp"
#include "denovo/scorer.hpp"
#include "denovo/solver.hpp"
#include "denovo/spectrum.hpp"

#endif  // DENOVO_DENOVO_HPP
