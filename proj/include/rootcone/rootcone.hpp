#pragma once
// Convenience header pulling in the whole library.

#include "rootcone/ball.hpp"
#include "rootcone/cone.hpp"
#include "rootcone/errors.hpp"
#include "rootcone/instance.hpp"
#include "rootcone/linalg.hpp"
#include "rootcone/looijenga.hpp"
#include "rootcone/numeric.hpp"
#include "rootcone/report.hpp"
#include "rootcone/rng.hpp"
#include "rootcone/roots.hpp"
#include "rootcone/weyl.hpp"
