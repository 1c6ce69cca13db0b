#pragma once

#include "orthoguard/rational.hpp"
#include "orthoguard/polygon.hpp"
#include "orthoguard/grid.hpp"
#include "orthoguard/spikes.hpp"
#include "orthoguard/partition.hpp"
#include "orthoguard/pyramids.hpp"
#include "orthoguard/chromatic.hpp"
#include "orthoguard/verify.hpp"
#include "orthoguard/search.hpp"
#include "orthoguard/tableau.hpp"
#include "orthoguard/io.hpp"
#include "orthoguard/render.hpp"
