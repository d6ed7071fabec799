#pragma once

// Umbrella header: the full library except the CLI front end, which pulls
// in third-party parsing headers and lives in hker/cli.hpp.

#include "hker/format.hpp"
#include "hker/gamma.hpp"
#include "hker/humbert.hpp"
#include "hker/hypergeometric.hpp"
#include "hker/pochhammer.hpp"
#include "hker/scalar.hpp"
#include "hker/verify.hpp"
