#pragma once

// Uncertain measure of ruin and optimal proportional-reinsurance
// retention under Liu's uncertainty theory.

#include "ruinlab/config.hpp"
#include "ruinlab/distribution.hpp"
#include "ruinlab/monotone.hpp"
#include "ruinlab/renewal.hpp"
#include "ruinlab/retention.hpp"
#include "ruinlab/ruin.hpp"
#include "ruinlab/table.hpp"
