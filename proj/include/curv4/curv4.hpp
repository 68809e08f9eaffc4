#pragma once

#include "curv4/core.hpp"
#include "curv4/twoform.hpp"
#include "curv4/curvops.hpp"
#include "curv4/secsign.hpp"
#include "curv4/numgeom.hpp"
#include "curv4/models.hpp"
#include "curv4/page.hpp"
#include "curv4/geography.hpp"
