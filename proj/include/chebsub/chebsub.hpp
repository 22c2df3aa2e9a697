#pragma once

#include "chebsub/bases.hpp"
#include "chebsub/errors.hpp"
#include "chebsub/experiments.hpp"
#include "chebsub/index_sets.hpp"
#include "chebsub/io.hpp"
#include "chebsub/recovery.hpp"
#include "chebsub/reference.hpp"
#include "chebsub/sampling.hpp"
#include "chebsub/subsampling.hpp"
