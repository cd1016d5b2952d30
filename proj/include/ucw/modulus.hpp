#pragma once

#include "ucw/modulus/modulus.hpp"
#include "ucw/modulus/verify.hpp"
