#pragma once

#include "maplink/annotation.hpp"
#include "maplink/corpus_io.hpp"
#include "maplink/cost_model.hpp"
#include "maplink/errors.hpp"
#include "maplink/evaluation.hpp"
#include "maplink/geometry.hpp"
#include "maplink/linkage.hpp"
#include "maplink/map_record.hpp"
#include "maplink/metric_learning.hpp"
#include "maplink/search.hpp"
#include "maplink/svg_overlay.hpp"
#include "maplink/text.hpp"
