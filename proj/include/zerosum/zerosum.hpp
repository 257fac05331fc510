#pragma once

#include "zerosum/afk.hpp"
#include "zerosum/bases.hpp"
#include "zerosum/enumeration.hpp"
#include "zerosum/error.hpp"
#include "zerosum/group.hpp"
#include "zerosum/manifest.hpp"
#include "zerosum/nullstellensatz.hpp"
#include "zerosum/profile.hpp"
#include "zerosum/report.hpp"
#include "zerosum/schmid.hpp"
#include "zerosum/search.hpp"
#include "zerosum/sequence.hpp"
#include "zerosum/subsums.hpp"
#include "zerosum/theorems.hpp"
