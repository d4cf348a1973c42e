#pragma once

#include "gknot/error.hpp"
#include "gknot/group.hpp"
#include "gknot/framed_graph.hpp"
#include "gknot/canonical.hpp"
#include "gknot/labeled.hpp"
#include "gknot/moves.hpp"
#include "gknot/search.hpp"
#include "gknot/invariants.hpp"
#include "gknot/functors.hpp"
#include "gknot/surface.hpp"
#include "gknot/io.hpp"
