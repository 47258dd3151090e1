#pragma once

#include <ostream>
#include <string>

#include "ovb/dataset.hpp"

namespace ovb {

// CSV ingestion: comma separated, '.' decimal, first row is the header.
// A row with any unparseable or missing cell fails the load (listing the
// offending rows) unless drop_na is set, in which case it is skipped.
Dataset load_csv(const std::string& path, bool drop_na = false);

// Full-precision export; load_csv(write_csv(ds)) reproduces ds exactly.
void write_csv(const Dataset& data, const std::string& path);
void write_csv(const Dataset& data, std::ostream& out);

}  // namespace ovb
