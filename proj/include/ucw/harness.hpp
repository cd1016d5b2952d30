#pragma once

#include "ucw/harness/config.hpp"
#include "ucw/harness/experiment.hpp"
#include "ucw/harness/report.hpp"
#include "ucw/harness/suite.hpp"
