// Command-line front end: compress, decompress, stats, gen.
#include <CLI11.hpp>

#include <climits>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "trp/fixtures.hpp"
#include "trp/pipeline.hpp"
#include "trp/succinct_decoder.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, const void* data, std::size_t size) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
}

int parse_rank(const std::string& s) {
  if (s == "inf" || s == "unlimited") return trp::DigramIndex::kUnbounded;
  std::size_t used = 0;
  long long v = std::stoll(s, &used);
  if (used != s.size() || v < 0) throw CLI::ValidationError("-max_rank", "expects a non-negative integer or inf");
  return v >= INT_MAX ? trp::DigramIndex::kUnbounded : static_cast<int>(v);
}

// Single-dash long switches are rewritten to the double-dash form.
std::vector<std::string> normalize(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = argc - 1; i >= 1; --i) {
    std::string a = argv[i];
    if (a == "-max_rank" || a == "-optimize" || a == "-no_dag") a = "-" + a;
    args.push_back(a);
  }
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grammar-based compressor for XML document trees"};
  app.require_subcommand(1);

  std::string max_rank = "4", optimize = "filesize", input, output;
  bool no_dag = false;
  auto add_flags = [&](CLI::App* cmd) {
    cmd->add_option("--max_rank", max_rank, "maximal rank of a nonterminal (integer or inf)");
    cmd->add_option("--optimize", optimize, "pruning target")->check(CLI::IsMember({"edges", "filesize"}));
    cmd->add_flag("--no_dag", no_dag, "skip the minimal DAG construction");
  };

  auto* compress = app.add_subcommand("compress", "compress an XML file");
  add_flags(compress);
  compress->add_option("input", input, "XML input")->required();
  compress->add_option("output", output, "output file (default: input.trp)");

  auto* stats = app.add_subcommand("stats", "print compression statistics");
  add_flags(stats);
  stats->add_option("input", input, "XML input")->required();

  auto* decompress = app.add_subcommand("decompress", "restore the XML element structure");
  decompress->add_option("input", input, "compressed input")->required();
  decompress->add_option("output", output, "XML output (default: standard output)");

  std::string family;
  int param = 0;
  auto* gen = app.add_subcommand("gen", "print a generated tree family member");
  gen->add_option("family", family, "perfect, M or U")->required()->check(CLI::IsMember({"perfect", "M", "U"}));
  gen->add_option("param", param, "depth or index")->required();
  gen->add_option("output", output, "output file (default: standard output)");

  try {
    app.parse(normalize(argc, argv));
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    trp::CompressOptions opt;
    opt.max_rank = parse_rank(max_rank);
    opt.optimize = optimize == "edges" ? trp::Optimize::Edges : trp::Optimize::FileSize;
    opt.dag = !no_dag;

    if (*compress || *stats) {
      auto text = read_file(input);
      auto res = trp::compress(trp::parse_xml(text), opt);
      if (*compress) {
        write_file(output.empty() ? input + ".trp" : output, res.bytes.data(), res.bytes.size());
        return 0;
      }
      const auto& s = res.stats;
      std::cout << "input_bytes: " << text.size() << "\n"
                << "tree_edges: " << s.tree_edges << "\n"
                << "dag_edges: " << s.dag_edges << "\n"
                << "grammar_edges: " << s.grammar_edges << "\n"
                << "nonterminals: " << s.nonterminals << "\n"
                << "edge_factor_percent: " << 100.0 * s.grammar_edges / std::max<std::size_t>(1, s.tree_edges) << "\n"
                << "output_bytes: " << s.output_bytes << "\n"
                << "file_size_factor_percent: " << 100.0 * s.output_bytes / std::max<std::size_t>(1, text.size()) << "\n"
                << "millis: " << s.millis << "\n";
      return 0;
    }
    if (*decompress) {
      auto bytes = read_file(input);
      auto xml = trp::decompress_to_xml(std::vector<std::uint8_t>(bytes.begin(), bytes.end()));
      if (output.empty()) std::cout << xml << "\n";
      else write_file(output, xml.data(), xml.size());
      return 0;
    }
    trp::BinaryTree t;
    if (family == "perfect") t = trp::gen_perfect_binary(param);
    else if (family == "M") t = trp::gen_M(param);
    else t = trp::gen_U(param);
    auto xml = trp::serialize_xml(t);
    if (output.empty()) std::cout << xml << "\n";
    else write_file(output, xml.data(), xml.size());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
