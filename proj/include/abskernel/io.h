#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "abskernel/absio.h"
#include "abskernel/model.h"
#include "abskernel/reductions.h"

namespace abskernel {

enum class FileFormat { wdnf, wcnf, uhg, absio, graph };

std::string to_string(FileFormat format);

using FilePayload = std::variant<WeightedFormula, WeightedHypergraph, AbsIoInstance, Graph>;

struct InstanceFile {
  FileFormat format;
  FilePayload payload;
};

// Parse errors are InputError with a "line L, column C: " prefix.
InstanceFile parse_instance(std::string_view text);
std::string serialize(const InstanceFile& file);

std::string serialize(const WeightedFormula& formula);
std::string serialize(const WeightedHypergraph& graph);
std::string serialize(const AbsIoInstance& inst);
std::string serialize(const Graph& graph);

// Witness files: "v <lit>..." lines for assignments (unlisted variables are
// false), "s <vertex>..." for vertex sets, "x <i> <value>" for points
// (unlisted coordinates are 0).  The payload decides which kind is expected.
Witness parse_witness(std::string_view text, const FilePayload& instance);
std::string serialize_witness(const Witness& witness);

}  // namespace abskernel
