#pragma once

#include "flaghom/error.hpp"
#include "flaghom/rootsys.hpp"
#include "flaghom/weyl.hpp"
#include "flaghom/coeffs.hpp"
#include "flaghom/smith.hpp"
#include "flaghom/homology.hpp"
