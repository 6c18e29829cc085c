#include "fairmodel/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <future>
#include <optional>
#include <sstream>

#include "fairmodel/analysis.hpp"
#include "fairmodel/catalogue.hpp"
#include "fairmodel/dsl.hpp"
#include "fairmodel/render.hpp"
#include "fairmodel/validator.hpp"
#include "fairmodel/weave.hpp"
#include "text_util.hpp"

namespace fairmodel::cli {
namespace {

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) return std::nullopt;
  return buffer.str();
}

bool write_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  return static_cast<bool>(out.flush());
}

/// Writes to `path` when given, else to `out`.
int emit(std::string_view text, const std::string& path, std::ostream& out, std::ostream& err) {
  if (path.empty()) {
    out << text;
    return kExitOk;
  }
  if (!write_file(path, text)) {
    err << "fairmodel: cannot write " << path << '\n';
    return kExitUsage;
  }
  return kExitOk;
}

std::optional<Model> load_model(const std::string& path, std::ostream& err) {
  auto text = read_file(path);
  if (!text) {
    err << "fairmodel: cannot read " << path << '\n';
    return std::nullopt;
  }
  ParseResult result = parse(*text, path);
  for (const ParseError& e : result.errors) err << format_parse_error(e) << '\n';
  return std::move(result.model);
}

/// Holds a catalogue loaded from disk, or points at the builtin one.
class CatalogueSource {
 public:
  /// `flag` wins over the environment; neither means builtin.
  bool open(const std::string& flag, std::ostream& err) {
    std::string path = flag;
    if (path.empty()) {
      if (const char* env = std::getenv(kCatalogueEnv)) path = env;
    }
    if (path.empty()) {
      current_ = &builtin_catalogue();
      return true;
    }
    auto text = read_file(path);
    if (!text) {
      err << "fairmodel: cannot read catalogue " << path << '\n';
      return false;
    }
    CatalogueLoadResult result = load_catalogue(*text, path);
    for (const CatalogueError& e : result.errors) err << format_catalogue_error(e) << '\n';
    if (!result.ok()) return false;
    loaded_ = std::move(result.catalogue);
    current_ = &*loaded_;
    return true;
  }

  const Catalogue& get() const { return *current_; }

 private:
  std::optional<Catalogue> loaded_;
  const Catalogue* current_ = nullptr;
};

struct CheckOutcome {
  std::string out;
  std::string err;
  int status = kExitOk;
};

CheckOutcome check_file(const std::string& path, bool strict) {
  CheckOutcome outcome;
  std::ostringstream out;
  std::ostringstream err;
  std::optional<Model> model = load_model(path, err);
  if (!model) {
    outcome.err = err.str();
    outcome.status = kExitUsage;
    return outcome;
  }
  for (const Diagnostic& d : validate(*model)) {
    bool is_error = d.severity == Severity::Error;
    ((is_error || strict) ? err : out) << format_diagnostic(d, path) << '\n';
    if (is_error || strict) outcome.status = kExitFailure;
  }
  outcome.out = out.str();
  outcome.err = err.str();
  return outcome;
}

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  for (std::string part; std::getline(in, part, ',');) {
    if (!part.empty()) parts.push_back(part);
  }
  return parts;
}

std::string stages_of(const PatternCard& card) {
  std::string text(to_string(card.category_primary));
  if (card.category_secondary) text += "/" + std::string(to_string(*card.category_secondary));
  return text;
}

std::string card_table(const std::vector<const PatternCard*>& cards) {
  std::vector<detail::Row> rows;
  for (const PatternCard* card : cards) {
    rows.push_back({card->name, stages_of(*card), detail::join(card->dimensions), card->title});
  }
  return detail::format_table({"pattern", "category", "dimensions", "title"}, rows, false);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Build, check and analyse fairness goal models.", "fairmodel"};
  app.require_subcommand(1);

  std::vector<std::string> check_files;
  bool strict = false;
  auto* check = app.add_subcommand("check", "Parse and validate models");
  check->add_option("files", check_files, "Model files")->required();
  check->add_flag("--strict", strict, "Treat warnings as failures");

  std::string fmt_file;
  bool fmt_write = false;
  auto* fmt = app.add_subcommand("fmt", "Print the canonical form of a model");
  fmt->add_option("file", fmt_file, "Model file")->required();
  fmt->add_flag("--write", fmt_write, "Rewrite the file in place");

  std::string catalogue_file;
  auto* catalogue = app.add_subcommand("catalogue", "Browse the pattern catalogue");
  catalogue->require_subcommand(1);
  catalogue->fallthrough();
  catalogue->add_option("--file", catalogue_file, "Catalogue file (default: builtin)");
  auto* cat_list = catalogue->add_subcommand("list", "List all patterns");
  std::string show_name;
  auto* cat_show = catalogue->add_subcommand("show", "Print one pattern card");
  cat_show->add_option("name", show_name, "Pattern name")->required();
  std::string search_category;
  std::string search_dimension;
  std::string search_keyword;
  auto* cat_search = catalogue->add_subcommand("search", "Filter patterns");
  cat_search->add_option("--category", search_category, "Stage");
  cat_search->add_option("--dimension", search_dimension, "Sustainability dimension");
  cat_search->add_option("--keyword", search_keyword, "Word in title, summary or content");

  std::string apply_file;
  WeaveRequest request;
  std::vector<std::string> bind_args;
  std::string select_arg;
  std::string attach_arg;
  std::string apply_out;
  std::string apply_catalogue;
  auto* apply_cmd = app.add_subcommand("apply", "Weave a pattern or fragment into a model");
  apply_cmd->add_option("file", apply_file, "Model file")->required();
  apply_cmd->add_option("--pattern", request.source, "Catalogue pattern or model fragment")->required();
  apply_cmd->add_option("--anchor", request.anchor, "Element the pattern root attaches to")->required();
  apply_cmd->add_option("--prefix", request.id_prefix, "Prefix for woven ids")->required();
  apply_cmd->add_option("--bind", bind_args, "Placeholder binding Word=text")->take_all();
  apply_cmd->add_option("--select", select_arg, "Comma-separated archetype ids to weave");
  apply_cmd->add_option("--attach", attach_arg, "Link kind from the root to the anchor");
  apply_cmd->add_option("-o,--output", apply_out, "Output file");
  apply_cmd->add_option("--catalogue", apply_catalogue, "Catalogue file");

  std::string import_file;
  std::string import_element;
  std::string import_fragment_name;
  std::string import_out;
  auto* import_cmd = app.add_subcommand("import", "Link an element to a fragment");
  import_cmd->add_option("file", import_file, "Model file")->required();
  import_cmd->add_option("--element", import_element, "Anchor element")->required();
  import_cmd->add_option("--fragment", import_fragment_name, "Fragment name")->required();
  import_cmd->add_option("-o,--output", import_out, "Output file");

  std::string render_file;
  std::string render_format;
  std::string render_out;
  auto* render_cmd = app.add_subcommand("render", "Emit diagram source");
  render_cmd->add_option("file", render_file, "Model file")->required();
  render_cmd->add_option("--format", render_format, "dot or mermaid")->required();
  render_cmd->add_option("-o,--output", render_out, "Output file");

  std::string report_file;
  std::string report_kind;
  bool report_tsv = false;
  std::string report_catalogue;
  auto* report = app.add_subcommand("report", "Analyse a model");
  report->add_option("file", report_file, "Model file")->required();
  report->add_option("kind", report_kind, "obstacles, attribution, coverage, balance or suggest")
      ->required()
      ->check(CLI::IsMember({"obstacles", "attribution", "coverage", "balance", "suggest"}));
  report->add_flag("--tsv", report_tsv, "Tab-separated records");
  report->add_option("--catalogue", report_catalogue, "Catalogue file");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "fairmodel: " << e.what() << '\n' << app.help();
    return kExitUsage;
  }

  if (check->parsed()) {
    std::vector<std::future<CheckOutcome>> pending;
    for (const std::string& path : check_files) {
      pending.push_back(std::async(std::launch::async, check_file, path, strict));
    }
    int status = kExitOk;
    for (auto& future : pending) {
      CheckOutcome outcome = future.get();
      out << outcome.out;
      err << outcome.err;
      status = std::max(status, outcome.status);
    }
    return status;
  }

  if (fmt->parsed()) {
    std::optional<Model> model = load_model(fmt_file, err);
    if (!model) return kExitUsage;
    std::string text = serialize(*model);
    if (!fmt_write) {
      out << text;
      return kExitOk;
    }
    if (read_file(fmt_file) == text) return kExitOk;
    return emit(text, fmt_file, out, err);
  }

  if (catalogue->parsed()) {
    CatalogueSource source;
    if (!source.open(catalogue_file, err)) return kExitUsage;
    const Catalogue& cat = source.get();
    if (cat_list->parsed()) {
      std::vector<const PatternCard*> cards;
      for (const PatternCard& card : cat.cards) cards.push_back(&card);
      out << card_table(cards);
      return kExitOk;
    }
    if (cat_show->parsed()) {
      const PatternCard* card = cat.find(show_name);
      if (card == nullptr) {
        err << "fairmodel: no pattern named `" << show_name << "`\n";
        return kExitFailure;
      }
      out << serialize_card(*card);
      return kExitOk;
    }
    SearchQuery query;
    if (!search_category.empty()) {
      query.category = stage_from_string(search_category);
      if (!query.category) {
        err << "fairmodel: unknown category `" << search_category
            << "` (expected design, adoption, implementation, evolution or governance)\n";
        return kExitUsage;
      }
    }
    if (!search_dimension.empty()) query.dimension = search_dimension;
    if (!search_keyword.empty()) query.keyword = search_keyword;
    out << card_table(search(cat, query));
    return kExitOk;
  }

  if (apply_cmd->parsed()) {
    if (!attach_arg.empty()) {
      request.attach_kind = link_kind_from_name(attach_arg);
      if (!request.attach_kind) {
        err << "fairmodel: unknown link kind `" << attach_arg << "`\n";
        return kExitUsage;
      }
    }
    if (apply_cmd->count("--select") != 0) request.selection = split_commas(select_arg);
    std::optional<Model> model = load_model(apply_file, err);
    if (!model) return kExitUsage;
    CatalogueSource source;
    if (!source.open(apply_catalogue, err)) return kExitUsage;
    try {
      for (const std::string& arg : bind_args) request.bindings.push_back(parse_binding(arg));
      Model woven = apply(std::move(*model), request, source.get());
      return emit(serialize(woven), apply_out, out, err);
    } catch (const WeaveError& e) {
      err << "fairmodel: " << to_string(e.code()) << ": " << e.what() << '\n';
      return kExitFailure;
    } catch (const ModelError& e) {
      err << "fairmodel: " << to_string(e.code()) << ": " << e.what() << '\n';
      return kExitFailure;
    }
  }

  if (import_cmd->parsed()) {
    std::optional<Model> model = load_model(import_file, err);
    if (!model) return kExitUsage;
    try {
      Model linked = import_fragment(std::move(*model), import_element, import_fragment_name);
      return emit(serialize(linked), import_out, out, err);
    } catch (const WeaveError& e) {
      err << "fairmodel: " << to_string(e.code()) << ": " << e.what() << '\n';
      return kExitFailure;
    }
  }

  if (render_cmd->parsed()) {
    auto format = render_format_from_string(render_format);
    if (!format) {
      err << "fairmodel: unknown format `" << render_format << "` (expected dot or mermaid)\n"
          << render_cmd->help();
      return kExitUsage;
    }
    std::optional<Model> model = load_model(render_file, err);
    if (!model) return kExitUsage;
    try {
      return emit(render(*model, *format), render_out, out, err);
    } catch (const RenderError& e) {
      err << "fairmodel: " << e.what() << '\n';
      for (const Diagnostic& d : e.diagnostics()) err << format_diagnostic(d, render_file) << '\n';
      return kExitFailure;
    }
  }

  // report
  std::optional<Model> model = load_model(report_file, err);
  if (!model) return kExitUsage;
  CatalogueSource source;
  if (!source.open(report_catalogue, err)) return kExitUsage;
  if (report_kind == "obstacles") {
    out << format_obstacles(obstacle_report(*model), report_tsv);
  } else if (report_kind == "attribution") {
    out << format_attribution(attribution_report(*model), report_tsv);
  } else if (report_kind == "coverage") {
    out << format_coverage(stage_coverage(*model, source.get()), report_tsv);
  } else if (report_kind == "balance") {
    out << format_balance(dimension_balance(*model), report_tsv);
  } else {
    out << format_suggestions(suggest(*model, source.get()), report_tsv);
  }
  return kExitOk;
}

}  // namespace fairmodel::cli
