#include "sosq/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "sosq/api.hpp"

namespace sosq::cli {

namespace fs = std::filesystem;

namespace {

struct FileResult {
  int exit_code = 0;
  std::string text;
  std::optional<Json> document;
  std::vector<std::string> trace;
  std::string error;
};

Json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, path.string() + ": " + e.what());
  }
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream o(path);
  if (!o) throw Error(Errc::InvalidArgument, "cannot write " + path.string());
  o << text;
}

FileResult process(const std::string& command, const fs::path& path, const std::optional<api::Base>& base,
                   const api::TraceOptions& opts) {
  FileResult r;
  try {
    const Json doc = read_json(path);
    api::Outcome o;
    if (command == "verify") {
      o = api::verify(doc, opts);
    } else if (command == "descend") {
      o = api::descend(doc, base, opts);
    } else if (command == "clear") {
      o = api::clear(doc, opts);
    } else if (command == "scale") {
      o = api::scale(doc, opts);
    } else if (command == "gram") {
      o = api::gram(doc, opts);
    } else {
      o = api::certify(doc, opts);
    }
    r.exit_code = o.exit_code;
    r.text = o.text;
    r.document = std::move(o.document);
    r.trace = std::move(o.trace);
  } catch (const Error& e) {
    r.exit_code = api::exit_code_for(e);
    r.error = e.what();
  }
  return r;
}

int run_single(const std::string& command, const std::string& file, const std::string& output,
               const std::optional<api::Base>& base, const api::TraceOptions& opts, std::ostream& out,
               std::ostream& err) {
  FileResult r = process(command, file, base, opts);
  for (const auto& line : r.trace) err << line << '\n';
  if (!r.error.empty()) {
    err << "error: " << r.error << '\n';
    return r.exit_code;
  }
  if (!r.text.empty()) out << r.text << '\n';
  if (r.document) {
    const std::string text = r.document->dump(2) + "\n";
    if (output.empty()) {
      out << text;
    } else {
      write_text(output, text);
    }
  }
  return r.exit_code;
}

int run_batch(const std::string& command, const fs::path& dir, std::string out_dir,
              const std::optional<api::Base>& base, const api::TraceOptions& opts, std::ostream& out) {
  if (!fs::is_directory(dir)) throw Error(Errc::InvalidArgument, dir.string() + " is not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  const fs::path target = out_dir.empty() ? dir / (command + "-out") : fs::path(out_dir);

  std::vector<std::future<FileResult>> jobs;
  jobs.reserve(files.size());
  for (const auto& f : files) jobs.push_back(std::async(std::launch::async, process, command, f, base, opts));

  bool any_document = false;
  std::vector<FileResult> results;
  for (auto& j : jobs) {
    results.push_back(j.get());
    any_document = any_document || results.back().document.has_value();
  }
  if (any_document) fs::create_directories(target);

  int worst = 0;
  for (std::size_t i = 0; i < files.size(); ++i) {
    const FileResult& r = results[i];
    worst = std::max(worst, r.exit_code);
    out << files[i].filename().string() << ": exit " << r.exit_code;
    if (!r.error.empty()) {
      out << ": error: " << r.error;
    } else if (!r.text.empty()) {
      out << ": " << r.text;
    }
    out << '\n';
    if (r.document) write_text(target / files[i].filename(), r.document->dump(2) + "\n");
  }
  return worst;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact sums-of-squares length certificates over Q", "sosq"};
  app.require_subcommand(1);
  app.fallthrough();
  bool trace = false, trace_full = false;
  app.add_flag("--trace", trace, "Print every intermediate identity check");
  app.add_flag("--trace-full", trace_full, "Also dump all entries at every step");

  std::string file, output, batch_dir, out_dir, base_text;
  auto add_file_command = [&](const std::string& name, const std::string& help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("file", file, "Certificate file (JSON)");
    sub->add_option("--batch", batch_dir, "Process every *.json file of a directory concurrently");
    if (name != "verify") {
      sub->add_option("-o,--output", output, "Write the resulting document here instead of stdout");
      sub->add_option("--out-dir", out_dir, "Batch output directory (default DIR/<command>-out)");
    }
    return sub;
  };
  add_file_command("verify", "Check the identity of a certificate (exit 0 valid, 1 invalid)");
  CLI::App* descend = add_file_command("descend", "Rewrite a representation with polynomial entries");
  descend->add_option("--base", base_text, "Qx (polynomials in x) or Qx_y (polynomials in y over Q(x))");
  add_file_command("clear", "Turn a rational representation on the plane into a regular one of equal length");
  add_file_command("scale", "Multiply a representation through by its squared common denominator");
  add_file_command("gram", "Extract a sum of squares from an exact PSD Gram matrix");
  add_file_command("certify", "Emit a length certificate");

  std::string rat_text;
  CLI::App* qlength = app.add_subcommand("qlength", "Length of a rational number as a sum of squares in Q");
  qlength->add_option("value", rat_text, "Rational number, e.g. 7 or 1/2")->required();

  std::string f_text, k_text;
  CLI::App* square = app.add_subcommand("square-test", "Is f a square (in Q(x)(sqrt(k)) when --k is given)");
  square->add_option("--f", f_text, "Element of Q(x,y)")->required();
  CLI::Option* k_opt = square->add_option("--k", k_text, "Nonconstant polynomial in x");

  std::string m_text;
  std::vector<std::string> fourth_entries;
  CLI::App* fourth = app.add_subcommand("fourth-power-check", "Obstruction for x^4 + m x^2 + 1 as a sum of fourth powers");
  fourth->add_option("--m", m_text, "Rational parameter m")->required();
  fourth->add_option("--entries", fourth_entries, "Polynomials whose fourth powers should sum to x^4 + m x^2 + 1");

  std::vector<const char*> argv{"sosq"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  const api::TraceOptions opts{trace || trace_full, trace_full};
  try {
    CLI::App* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    if (name == "qlength" || name == "square-test" || name == "fourth-power-check") {
      api::Outcome o = name == "qlength"       ? api::qlength(rat_text)
                       : name == "square-test" ? api::square_test(f_text, k_opt->count() ? std::optional(k_text) : std::nullopt)
                                               : api::fourth_power_check(m_text, fourth_entries);
      out << o.text << '\n';
      return o.exit_code;
    }
    std::optional<api::Base> base;
    if (!base_text.empty()) base = api::parse_base(base_text);
    if (!batch_dir.empty()) {
      if (!file.empty()) throw Error(Errc::InvalidArgument, "give either a file or --batch, not both");
      return run_batch(name, batch_dir, out_dir, base, opts, out);
    }
    if (file.empty()) throw Error(Errc::InvalidArgument, "missing certificate file");
    return run_single(name, file, output, base, opts, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return api::exit_code_for(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace sosq::cli
