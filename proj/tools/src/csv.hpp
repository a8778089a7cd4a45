#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace difflat::cli {

struct Column {
  std::string name;
  bool per_axis = false;  // expands to name1..nameN
  std::string type;
  std::string description;
};

struct Schema {
  std::string name;
  int version = 1;
  std::vector<Column> columns;

  std::string tag() const { return name + "/" + std::to_string(version); }
  std::vector<std::string> header(int dim) const;
};

const std::vector<Schema>& schemas();
const Schema& schema(const std::string& name);
void print_schema(std::ostream& os, const Schema& s);

// First line "# schema: <name>/<version>", then the header, then rows.
class CsvWriter {
 public:
  CsvWriter(std::ostream& os, const Schema& s, int dim);
  void row(const std::vector<std::string>& cells);

 private:
  std::ostream& os_;
  std::size_t width_;
};

}  // namespace difflat::cli
