#ifndef TRIGRAPH_TRIGRAPH_HPP
#define TRIGRAPH_TRIGRAPH_HPP

#include "trigraph/effective.hpp"
#include "trigraph/engines.hpp"
#include "trigraph/graph.hpp"
#include "trigraph/intersect.hpp"
#include "trigraph/io.hpp"
#include "trigraph/order.hpp"
#include "trigraph/partition.hpp"
#include "trigraph/runtime.hpp"
#include "trigraph/sequential.hpp"
#include "trigraph/sparsify.hpp"
#include "trigraph/stats.hpp"

#endif  // TRIGRAPH_TRIGRAPH_HPP
