#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

#include "rrp/configuration.hpp"
#include "rrp/instance.hpp"

namespace rrp {

// Instance files. Parsing never keeps demand triples in a JSON tree, so
// instances with millions of demands can be read from a stream.
RRPInstance parse_instance(std::string_view text);
RRPInstance read_instance(std::istream& in);
RRPInstance read_instance_file(const std::string& path);
std::string serialize_instance(const RRPInstance& inst);
void write_instance(std::ostream& out, const RRPInstance& inst);

using DemandSink = std::function<void(const Demand&)>;
using DemandSource = std::function<void(const DemandSink&)>;

// Writes inst with the demands produced by `demands` instead of
// inst.workload.
void write_instance_streamed(std::ostream& out, const RRPInstance& inst, const DemandSource& demands);
// Passes every demand to `sink` in file order and returns the instance with
// an empty workload. Repeated pairs are not detected in this mode.
RRPInstance read_instance_streamed(std::istream& in, const DemandSink& sink);

// Configuration files: {switch id: [[port, port], ...]}.
Configuration parse_configuration(std::string_view text, const HybridNetwork& net);
Configuration read_configuration(std::istream& in, const HybridNetwork& net);
std::string serialize_configuration(const Configuration& cfg, const HybridNetwork& net);
void write_configuration(std::ostream& out, const Configuration& cfg, const HybridNetwork& net);

// Flow files: {"src->dst": [{"kind": "static"|"dynamic", "u": .., "v": ..}]}.
// The result is aligned with inst.workload; total_cost is left at 0 and is
// filled in by evaluation.
FlowAssignment parse_flows(std::string_view text, const RRPInstance& inst);
FlowAssignment read_flows(std::istream& in, const RRPInstance& inst);
std::string serialize_flows(const FlowAssignment& flows, const RRPInstance& inst);
void write_flows(std::ostream& out, const FlowAssignment& flows, const RRPInstance& inst);

using PathSink = std::function<void(const FlowPath&)>;
using PathSource = std::function<void(const PathSink&)>;
void write_flows_streamed(std::ostream& out, const HybridNetwork& net, const PathSource& paths);

std::string demand_key(const HybridNetwork& net, NodeId src, NodeId dst);

}  // namespace rrp
