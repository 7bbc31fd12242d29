#pragma once

#include "gnc/butterfly.hpp"
#include "gnc/conversions.hpp"
#include "gnc/cwl.hpp"
#include "gnc/distribution.hpp"
#include "gnc/error.hpp"
#include "gnc/gf.hpp"
#include "gnc/group.hpp"
#include "gnc/group_char.hpp"
#include "gnc/group_search.hpp"
#include "gnc/io.hpp"
#include "gnc/linear.hpp"
#include "gnc/network.hpp"
#include "gnc/survey.hpp"
