#pragma once

#include "ucw/iterate/certificates.hpp"
#include "ucw/rates/bounds.hpp"
#include "ucw/rates/certificate.hpp"
