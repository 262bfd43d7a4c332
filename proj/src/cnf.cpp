#include "ffbench/cnf.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace ffbench {

namespace {

bool blank(const std::string& line) {
  return line.find_first_not_of(" \t\r\n") == std::string::npos;
}

char first_char(const std::string& line) {
  const auto pos = line.find_first_not_of(" \t\r\n");
  return pos == std::string::npos ? '\0' : line[pos];
}

}  // namespace

CnfFormula parse_dimacs(std::istream& in) {
  CnfFormula formula;
  std::size_t lineno = 0;
  std::size_t last_content_line = 0;
  bool have_header = false;
  bool in_trailer = false;
  long declared = -1;
  std::vector<int> current;

  std::string line;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank(line)) continue;
    const char head = first_char(line);
    if (head == 'c') continue;

    if (!have_header) {
      if (head != 'p')
        throw DimacsParseError("expected 'p cnf <vars> <clauses>' header",
                               lineno);
      std::istringstream hs(line);
      std::string p, fmt;
      long vars = 0;
      hs >> p >> fmt >> vars >> declared;
      if (hs.fail() || p != "p" || fmt != "cnf" || vars <= 0 || declared <= 0)
        throw DimacsParseError("malformed header '" + line + "'", lineno);
      formula.num_vars = static_cast<int>(vars);
      formula.clauses.reserve(static_cast<std::size_t>(declared));
      have_header = true;
      continue;
    }

    if (head == '%') {  // SATLib trailer: "%" then a lone "0"
      in_trailer = true;
      continue;
    }

    std::istringstream ls(line);
    long literal = 0;
    while (ls >> literal) {
      if (in_trailer) {
        if (literal == 0) continue;
        throw DimacsParseError("literal after '%' trailer", lineno);
      }
      if (literal == 0) {
        if (current.empty()) {
          // A lone 0 after the final clause is the SATLib trailer.
          if (formula.num_clauses() == declared) continue;
          throw DimacsParseError("empty clause", lineno);
        }
        formula.clauses.push_back(current);
        current.clear();
        continue;
      }
      if (formula.num_clauses() == declared && current.empty())
        throw DimacsParseError(
            "more clauses than the header declares (" +
                std::to_string(declared) + ")",
            lineno);
      if (std::abs(literal) > formula.num_vars)
        throw DimacsParseError("literal " + std::to_string(literal) +
                                   " out of range [1," +
                                   std::to_string(formula.num_vars) + "]",
                               lineno);
      current.push_back(static_cast<int>(literal));
      last_content_line = lineno;
    }
    if (!ls.eof())
      throw DimacsParseError("unexpected token in clause data", lineno);
  }

  if (!have_header) throw DimacsParseError("missing 'p cnf' header", lineno);
  if (!current.empty())
    throw DimacsParseError("unterminated final clause", last_content_line);
  if (formula.num_clauses() != declared)
    throw DimacsParseError(
        "clause count mismatch: header declares " + std::to_string(declared) +
            ", found " + std::to_string(formula.num_clauses()),
        lineno);
  return formula;
}

CnfFormula parse_dimacs_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open CNF file: " + path.string());
  return parse_dimacs(in);
}

std::string to_dimacs(const CnfFormula& formula) {
  std::ostringstream out;
  out << "p cnf " << formula.num_vars << ' ' << formula.num_clauses() << '\n';
  for (const auto& clause : formula.clauses) {
    for (const int literal : clause) out << literal << ' ';
    out << "0\n";
  }
  return out.str();
}

ObjectiveValue maxsat_unsatisfied(const CnfFormula& formula,
                                  const BitString& x) {
  if (x.size() != static_cast<std::size_t>(formula.num_vars))
    throw std::invalid_argument("maxsat_unsatisfied: assignment length " +
                                std::to_string(x.size()) + " != num_vars " +
                                std::to_string(formula.num_vars));
  ObjectiveValue unsatisfied = 0;
  for (const auto& clause : formula.clauses) {
    bool sat = false;
    for (const int literal : clause) {
      const std::size_t var = static_cast<std::size_t>(std::abs(literal)) - 1;
      if ((literal > 0) == (x[var] != 0)) {
        sat = true;
        break;
      }
    }
    unsatisfied += sat ? 0 : 1;
  }
  return unsatisfied;
}

std::vector<std::filesystem::path> list_cnf_files(
    const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".cnf")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  return files;
}

}  // namespace ffbench
