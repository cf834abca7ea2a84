#ifndef MWCUT_IO_HPP
#define MWCUT_IO_HPP

#include <iosfwd>
#include <string>
#include <variant>

#include "mwcut/instance.hpp"

// Line-oriented text formats. '#' starts a comment, tokens are whitespace
// separated, node ids are 1-based on disk and 0-based in memory. Weights are
// decimal or the token `inf`; serialization uses shortest round-trip decimals
// so parse(serialize(x)) reproduces x bit-exactly.
//
// Instance file:
//   p dirmc <n> <m> <k>          header, then k `t <id>` lines and
//   a <u> <v> <w|inf>            m arc lines
// or
//   p nodemc <n> <m> <k>         header, then k `t <id>` lines,
//   n <id> <w|inf>               n node-weight lines and
//   e <u> <v>                    m edge lines
//
// Fractional solution file: `x <u> <v> <value>` per arc in arc order, or
// `xn <id> <value>` per node in id order.
//
// Cut file: `cut a <u> <v>` / `cut n <id>` lines, then a final `cost <value>`.

namespace mwcut {

using AnyInstance = std::variant<DirectedInstance, NodeInstance>;

AnyInstance parse_instance(std::istream& in);
AnyInstance parse_instance_string(const std::string& text);
AnyInstance load_instance(const std::string& path);

std::string serialize_instance(const DirectedInstance& inst);
std::string serialize_instance(const NodeInstance& inst);

FractionalSolution parse_fractional(std::istream& in, const DirectedInstance& inst);
FractionalSolution parse_fractional(std::istream& in, const NodeInstance& inst);
std::string serialize_fractional(const DirectedInstance& inst, const FractionalSolution& x);
std::string serialize_fractional(const NodeInstance& inst, const FractionalSolution& x);

CutSolution parse_cut(std::istream& in, const DirectedInstance& inst);
CutSolution parse_cut(std::istream& in, const NodeInstance& inst);
std::string serialize_cut(const DirectedInstance& inst, const CutSolution& cut);
std::string serialize_cut(const NodeInstance& inst, const CutSolution& cut);

// Shortest decimal that round-trips to the same double; "inf" for infinity.
std::string format_weight(double w);

}  // namespace mwcut

#endif
