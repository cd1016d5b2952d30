#pragma once

#include "ucw/iterate/certificates.hpp"
#include "ucw/iterate/lemma.hpp"
#include "ucw/iterate/orbit.hpp"
#include "ucw/iterate/schedule.hpp"
