#pragma once

// Umbrella header: the whole pipeline in dependency order.

#include "slant/error.hpp"       // IWYU pragma: export
#include "slant/rng.hpp"         // IWYU pragma: export
#include "slant/parallel.hpp"    // IWYU pragma: export
#include "slant/corpus.hpp"      // IWYU pragma: export
#include "slant/ingest.hpp"      // IWYU pragma: export
#include "slant/wlor.hpp"        // IWYU pragma: export
#include "slant/category.hpp"    // IWYU pragma: export
#include "slant/embedding.hpp"   // IWYU pragma: export
#include "slant/sgns.hpp"        // IWYU pragma: export
#include "slant/kmeans.hpp"      // IWYU pragma: export
#include "slant/weat.hpp"        // IWYU pragma: export
#include "slant/fixtures.hpp"    // IWYU pragma: export
#include "slant/stats.hpp"       // IWYU pragma: export
#include "slant/temporal.hpp"    // IWYU pragma: export
#include "slant/report.hpp"      // IWYU pragma: export
#include "slant/config.hpp"      // IWYU pragma: export
#include "slant/version.hpp"     // IWYU pragma: export
