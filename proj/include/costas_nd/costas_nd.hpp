#pragma once

#include "costas_nd/core.hpp"
#include "costas_nd/rational.hpp"
#include "costas_nd/analysis.hpp"
#include "costas_nd/io.hpp"
#include "costas_nd/search.hpp"
#include "costas_nd/report.hpp"
#include "costas_nd/sampling.hpp"
#include "costas_nd/claims.hpp"
