#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "grinch/types.hpp"

namespace grinch {

/// tsv: one row per point, "id<TAB>label<TAB>v1<TAB>...<TAB>vd", with "-" for
/// a missing label.
/// grvc: "GRVC", u32 n, u32 d (little-endian), n*d float32, n u32 labels
/// (0xFFFFFFFF for none). Point ids are 0..n-1.
enum class VectorFormat { tsv, grvc };

VectorFormat parse_format(std::string_view name);

/// Throws InputError on unreadable or malformed input, including empty files,
/// ragged rows (the message names the line) and bad headers.
Dataset read_vectors(std::istream& in, VectorFormat format);
Dataset load_vectors(const std::string& path, VectorFormat format);

/// grvc stores float32, so values round-trip exactly only when they are
/// float-representable; tsv round-trips doubles exactly.
void write_vectors(std::ostream& out, const Dataset& data, VectorFormat format);
void save_vectors(const std::string& path, const Dataset& data, VectorFormat format);

}  // namespace grinch
