#pragma once

#include "sticky_manet/byte_io.hpp"
#include "sticky_manet/metrics.hpp"
#include "sticky_manet/node_agent.hpp"
#include "sticky_manet/packet.hpp"
#include "sticky_manet/policy.hpp"
#include "sticky_manet/radio.hpp"
#include "sticky_manet/scenario.hpp"
#include "sticky_manet/scenarios.hpp"
#include "sticky_manet/simulator.hpp"
#include "sticky_manet/trace.hpp"
#include "sticky_manet/types.hpp"
#include "sticky_manet/verify.hpp"
