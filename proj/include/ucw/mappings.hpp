#pragma once

#include "ucw/mappings/catalog.hpp"
#include "ucw/mappings/check.hpp"
#include "ucw/mappings/map.hpp"
