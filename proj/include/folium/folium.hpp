#pragma once

// Umbrella header: the whole library.

#include "folium/config.hpp"
#include "folium/errors.hpp"
#include "folium/family.hpp"
#include "folium/gt_path.hpp"
#include "folium/involution.hpp"
#include "folium/json_io.hpp"
#include "folium/monodromy.hpp"
#include "folium/one_form.hpp"
#include "folium/polynomial.hpp"
#include "folium/quintic.hpp"
#include "folium/rational.hpp"
#include "folium/rng.hpp"
#include "folium/scalar.hpp"
#include "folium/series.hpp"
#include "folium/series2.hpp"
