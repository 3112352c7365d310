#pragma once

#include "conelab/catalog.hpp"
#include "conelab/classify.hpp"
#include "conelab/cones.hpp"
#include "conelab/error.hpp"
#include "conelab/exterior.hpp"
#include "conelab/liegroup.hpp"
#include "conelab/report.hpp"
#include "conelab/sampled_set.hpp"
#include "conelab/subspaces.hpp"
