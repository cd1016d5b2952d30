#pragma once

#include "ucw/analysis.hpp"
#include "ucw/harness.hpp"
#include "ucw/iterate.hpp"
#include "ucw/mappings.hpp"
#include "ucw/modulus.hpp"
#include "ucw/rates.hpp"
#include "ucw/spaces.hpp"
