#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ortho/harness.hpp"

namespace ortho {

namespace {

const char* kHeader = "iter,time_s,loss,gap,max_distance,lambda_used,xi";

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt_or_na(double v) { return std::isnan(v) ? "NA" : fmt(v); }

double parse_or_nan(const std::string& s) {
  if (s == "NA") return std::numeric_limits<double>::quiet_NaN();
  return std::stod(s);
}

}  // namespace

std::string format_csv(const std::vector<RunRecord>& records,
                       const std::vector<std::string>& comments,
                       const std::vector<std::string>& trailers) {
  std::ostringstream os;
  for (const std::string& c : comments) os << "# " << c << "\n";
  os << kHeader << "\n";
  for (const RunRecord& r : records) {
    os << r.iter << "," << fmt(r.time_s) << "," << fmt(r.loss) << ","
       << fmt_or_na(r.gap) << "," << fmt(r.max_distance) << ","
       << fmt_or_na(r.lambda_used) << "," << fmt(r.xi) << "\n";
  }
  for (const std::string& c : trailers) os << "# " << c << "\n";
  return os.str();
}

void emit_csv(const std::vector<RunRecord>& records, const std::string& path,
              const std::vector<std::string>& comments,
              const std::vector<std::string>& trailers) {
  std::ofstream f(path, std::ios::binary);  // binary: keep UNIX newlines
  if (!f) throw Error("emit_csv: cannot open '" + path + "' for writing");
  f << format_csv(records, comments, trailers);
  f.flush();
  if (!f) throw Error("emit_csv: write failed for '" + path + "'");
}

std::vector<RunRecord> parse_csv(const std::string& text) {
  std::vector<RunRecord> out;
  std::istringstream is(text);
  std::string line;
  bool seen_header = false;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!seen_header) {
      if (line != kHeader)
        throw Error("parse_csv: unexpected header '" + line + "'");
      seen_header = true;
      continue;
    }
    std::istringstream ls(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ls, field, ',')) fields.push_back(field);
    if (fields.size() != 7)
      throw Error("parse_csv: expected 7 fields, got " +
                  std::to_string(fields.size()));
    RunRecord r;
    r.iter = std::stol(fields[0]);
    r.time_s = parse_or_nan(fields[1]);
    r.loss = parse_or_nan(fields[2]);
    r.gap = parse_or_nan(fields[3]);
    r.max_distance = parse_or_nan(fields[4]);
    r.lambda_used = parse_or_nan(fields[5]);
    r.xi = parse_or_nan(fields[6]);
    out.push_back(r);
  }
  if (!seen_header) throw Error("parse_csv: missing header");
  return out;
}

}  // namespace ortho
