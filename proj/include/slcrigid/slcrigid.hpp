#pragma once

#include "slcrigid/catalog.hpp"
#include "slcrigid/error.hpp"
#include "slcrigid/group.hpp"
#include "slcrigid/henneberg.hpp"
#include "slcrigid/io.hpp"
#include "slcrigid/linalg.hpp"
#include "slcrigid/realize.hpp"
#include "slcrigid/selftest.hpp"
#include "slcrigid/sparsity.hpp"
#include "slcrigid/svg.hpp"
#include "slcrigid/symcheck.hpp"
#include "slcrigid/symgraph.hpp"
