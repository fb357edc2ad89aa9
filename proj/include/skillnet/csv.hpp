#pragma once

// Minimal CSV line handling shared by the ingest parsers and the output
// readers. Our formats never need quoting (fields are ids and numbers),
// so a plain comma split with CRLF tolerance is the whole story.

#include <string>
#include <vector>

namespace skillnet {

// Splits on commas after stripping a trailing '\r'. Empty fields are
// returned as empty strings; policy about them belongs to the caller.
std::vector<std::string> split_csv_line(const std::string& line);

std::string lowercase_copy(std::string s);

}  // namespace skillnet
