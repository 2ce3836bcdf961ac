#ifndef POLYRIESZ_TESTS_SUBPROCESS_HPP
#define POLYRIESZ_TESTS_SUBPROCESS_HPP

#include <sys/wait.h>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace testutil {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

inline std::string shell_quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) {
    if (c == '\'') {
      q += "'\\''";
    } else {
      q += c;
    }
  }
  q += "'";
  return q;
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Runs the CLI with the given arguments, feeding stdin_text on standard
// input, and captures both output streams.
inline RunResult run_cli(const std::string& cli, const std::vector<std::string>& args,
                         const std::string& stdin_text = "") {
  static std::atomic<unsigned> counter{0};
  unsigned id = counter++;
  std::filesystem::path dir = std::filesystem::temp_directory_path();
  std::filesystem::path in_path = dir / ("polyriesz_in_" + std::to_string(id) + ".txt");
  std::filesystem::path out_path = dir / ("polyriesz_out_" + std::to_string(id) + ".txt");
  std::filesystem::path err_path = dir / ("polyriesz_err_" + std::to_string(id) + ".txt");

  {
    std::ofstream in(in_path, std::ios::binary);
    in << stdin_text;
  }

  std::string cmd = shell_quote(cli);
  for (const std::string& a : args) cmd += " " + shell_quote(a);
  cmd += " < " + shell_quote(in_path.string());
  cmd += " > " + shell_quote(out_path.string());
  cmd += " 2> " + shell_quote(err_path.string());

  int status = std::system(cmd.c_str());

  RunResult r;
  if (status == -1) {
    r.exit_code = -1;
  } else if (WIFEXITED(status)) {
    r.exit_code = WEXITSTATUS(status);
  } else {
    r.exit_code = 128;
  }
  r.out = read_file(out_path);
  r.err = read_file(err_path);
  std::filesystem::remove(in_path);
  std::filesystem::remove(out_path);
  std::filesystem::remove(err_path);
  return r;
}

}  // namespace testutil

#endif
