#pragma once

#include "siegel/rational.hpp"
#include "siegel/cyclotomic.hpp"
#include "siegel/character.hpp"
#include "siegel/interval.hpp"
#include "siegel/parallel.hpp"
#include "siegel/quadform.hpp"
#include "siegel/restrict.hpp"
#include "siegel/operators.hpp"
#include "siegel/linsys.hpp"
#include "siegel/ingest.hpp"
#include "siegel/pipeline.hpp"
