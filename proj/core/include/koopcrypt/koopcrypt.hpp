#pragma once

#include "koopcrypt/dynsys.hpp"
#include "koopcrypt/edmd.hpp"
#include "koopcrypt/errors.hpp"
#include "koopcrypt/exact.hpp"
#include "koopcrypt/io.hpp"
#include "koopcrypt/lifting.hpp"
#include "koopcrypt/lincomp.hpp"
#include "koopcrypt/numtheory.hpp"
#include "koopcrypt/spectral.hpp"
#include "koopcrypt/version.hpp"
