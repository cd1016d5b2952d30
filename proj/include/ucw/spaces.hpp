#pragma once

#include "ucw/spaces/convex_set.hpp"
#include "ucw/spaces/hyperbolic.hpp"
#include "ucw/spaces/rtree.hpp"
#include "ucw/spaces/segment.hpp"
#include "ucw/spaces/space.hpp"
#include "ucw/spaces/vector_spaces.hpp"
