#pragma once

#include "ucw/analysis/asymptotic.hpp"
#include "ucw/analysis/probe.hpp"
#include "ucw/analysis/projection.hpp"
