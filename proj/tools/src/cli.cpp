/*
 * Copyright 2026 The ConceptWiki Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "cw/cli.hpp"

#include <CLI11.hpp>

#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <pthread.h>

#include "cw/enzyme.hpp"
#include "cw/error.hpp"
#include "cw/import.hpp"
#include "cw/rdf.hpp"
#include "cw/service.hpp"
#include "cw/store.hpp"

namespace cw::cli {
namespace {

namespace fs = std::filesystem;

/// A failure that maps to kExitUsage with a message on stderr.
struct Fatal {
  std::string message;
};

struct Common {
  std::vector<std::string> args;
  int verbose = 0;
};

// Positionals are "<store-path> rest..."; the store path may come from
// CW_STORE instead.
std::vector<std::string> resolve_args(const std::vector<std::string>& args, std::size_t wanted,
                                      const std::string& usage) {
  if (args.size() == wanted) return args;
  if (args.size() + 1 == wanted) {
    if (const char* env = std::getenv("CW_STORE"); env != nullptr && *env != '\0') {
      std::vector<std::string> out{env};
      out.insert(out.end(), args.begin(), args.end());
      return out;
    }
  }
  throw Fatal{"usage: " + usage + " (the store path may be set via CW_STORE)"};
}

std::unique_ptr<Store> open_existing(const fs::path& dir, StoreOptions options = {}) {
  if (!fs::exists(dir / kJournalFileName)) throw Fatal{"no store at " + dir.string() + " (run 'cw init' first)"};
  auto store = Store::open(dir, std::move(options));
  return store;
}

void print_warnings(const Store& store, std::ostream& err) {
  for (const auto& w : store.open_warnings()) err << "warning: " << w << '\n';
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Fatal{"cannot read " + path.string()};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, std::string_view data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << data;
  out.close();
  if (!out) throw Fatal{"cannot write " + path.string()};
}

int cmd_init(const Common& c, std::ostream& err) {
  const fs::path dir = resolve_args(c.args, 1, "cw init <store-path>")[0];
  if (fs::exists(dir / kJournalFileName)) throw Fatal{"store already exists at " + dir.string()};
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Fatal{"cannot create " + dir.string() + ": " + ec.message()};
  auto store = Store::open(dir);
  store->flush();
  if (c.verbose > 0) err << "initialized store at " << dir.string() << " (revision " << store->revision() << ")\n";
  return kExitOk;
}

struct ImportFlags {
  std::string authority = std::string(import::kAuthorityName);
  std::string release;
  std::string emit_xml;
  std::string report;
  bool dry_run = false;
};

int cmd_import(const Common& c, const ImportFlags& f, std::ostream& out, std::ostream& err) {
  const auto args = resolve_args(c.args, 2, "cw import <store-path> <enzyme.dat>");
  auto store = open_existing(args[0]);
  print_warnings(*store, err);

  enzyme::ParseResult parsed;
  try {
    parsed = enzyme::parse_flat_file(read_file(args[1]), f.release);
  } catch (const enzyme::FatalParseError& e) {
    throw Fatal{args[1] + ": " + e.what()};
  }
  if (c.verbose > 0) {
    for (const auto& w : parsed.warnings) err << args[1] << ':' << w.line << ": warning: " << w.message << '\n';
  } else if (!parsed.warnings.empty()) {
    err << parsed.warnings.size() << " parser warning(s); use -v to list them\n";
  }

  // The XML document is the hand-off between parsing and reconciliation.
  const auto xml = enzyme::records_to_xml(parsed.doc);
  if (!f.emit_xml.empty()) write_file(f.emit_xml, xml);
  const auto doc = enzyme::xml_to_records(xml);

  import::PlanOptions options;
  for (const auto& e : parsed.errors) {
    err << args[1] << ':' << e.line << ": error: " << e.message << '\n';
    options.skipped_ecs.insert(e.ec);
    options.upstream_errors.push_back("line " + std::to_string(e.line) + ": " + e.message);
  }

  const auto snapshot = store->snapshot();
  const auto plan = import::plan_import(*snapshot, doc, Source::authority(f.authority, f.release), options);
  for (const auto& ec : plan.report.ambiguous_ecs) err << "ambiguous: EC " << ec << " matches several concepts; skipped\n";
  for (std::size_t i = parsed.errors.size(); i < plan.report.errors.size(); ++i) {
    err << "error: " << plan.report.errors[i] << '\n';
  }

  if (f.dry_run) {
    err << "dry run: " << plan.actions.size() << " action(s) planned, nothing written\n";
  } else {
    import::apply_import(*store, plan);
    store->flush();
  }
  const auto json = import::to_json(plan.report);
  out << json << '\n';
  if (!f.report.empty()) write_file(f.report, json + "\n");
  return plan.report.errors.empty() && plan.report.ambiguous_ecs.empty() ? kExitOk : kExitPartial;
}

struct ExportFlags {
  std::string format = "ntriples";
  std::string style = "literal";
  std::string out;
  bool include_withdrawn = false;
};

int cmd_export(const Common& c, const ExportFlags& f, std::ostream& out, std::ostream& err) {
  const auto args = resolve_args(c.args, 1, "cw export-rdf <store-path>");
  auto store = open_existing(args[0]);
  print_warnings(*store, err);
  rdf::ExportOptions options;
  options.format = *rdf::parse_format(f.format);
  options.style = *rdf::parse_object_style(f.style);
  options.include_withdrawn = f.include_withdrawn;
  const auto snapshot = store->snapshot();
  std::size_t n = 0;
  if (f.out.empty()) {
    n = rdf::export_all(*snapshot, out, options);
    out.flush();
  } else {
    std::ofstream file(f.out, std::ios::binary | std::ios::trunc);
    if (!file) throw Fatal{"cannot write " + f.out};
    n = rdf::export_all(*snapshot, file, options);
    file.close();
    if (!file) throw Fatal{"cannot write " + f.out};
  }
  if (c.verbose > 0) err << n << " statement(s) written\n";
  return kExitOk;
}

struct SearchFlags {
  std::string lang;
  std::size_t limit = 20;
  bool prefix = false;
};

int cmd_search(const Common& c, const SearchFlags& f, std::ostream& out, std::ostream& err) {
  const auto args = resolve_args(c.args, 2, "cw search <store-path> <query>");
  auto store = open_existing(args[0]);
  print_warnings(*store, err);
  SynonymQuery q;
  q.label = args[1];
  if (!f.lang.empty()) q.language = f.lang;
  q.mode = f.prefix ? SearchMode::kPrefix : SearchMode::kExact;
  q.limit = f.limit;
  const auto snapshot = store->snapshot();
  auto hits = snapshot->search_synonyms(q);
  if (hits.size() > f.limit) hits.resize(f.limit);
  for (const auto& h : hits) {
    out << h.concept_id.str() << '\t' << snapshot->preferred_label(h.concept_id) << '\t'
        << snapshot->get_term(h.matched_term).label << '\n';
  }
  return kExitOk;
}

struct ServeFlags {
  std::string host = "127.0.0.1";
  int port = 8080;
};

int cmd_serve(const Common& c, const ServeFlags& f, std::ostream& err) {
  const auto args = resolve_args(c.args, 1, "cw serve <store-path> --port <n>");
  StoreOptions options;
  options.sync_each_commit = true;
  auto store = open_existing(args[0], options);
  print_warnings(*store, err);

  service::ApiOptions api_options;
  if (const char* origins = std::getenv("CW_CORS_ORIGINS")) api_options.cors_origins = service::parse_origin_list(origins);
  service::Api api(*store, api_options);
  service::Server server(api);

  // Signals are taken synchronously by this thread; server threads inherit
  // the blocked mask.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  const int port = server.bind(f.host, f.port);
  if (port < 0) throw Fatal{"cannot bind " + f.host + ":" + std::to_string(f.port)};
  err << "listening on http://" << f.host << ':' << port << '\n';
  err.flush();
  std::thread listener([&] { server.listen(); });
  int sig = 0;
  sigwait(&signals, &sig);
  err << "shutting down\n";
  server.stop();
  listener.join();
  store->flush();
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"ConceptWiki store tool", "cw"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_flag("-v,--verbose", common.verbose, "More diagnostics on stderr");

  auto positional = [&](CLI::App* sub, const char* help) {
    sub->add_option("args", common.args, help);
  };

  auto* init = app.add_subcommand("init", "Create and seed a new store");
  positional(init, "<store-path>");

  ImportFlags import_flags;
  auto* imp = app.add_subcommand("import", "Import an ENZYME flat file");
  positional(imp, "<store-path> <enzyme.dat>");
  imp->add_option("--authority", import_flags.authority, "Authority name")->capture_default_str();
  imp->add_option("--release", import_flags.release, "Release label recorded in provenance")->required();
  imp->add_option("--emit-xml", import_flags.emit_xml, "Write the intermediate XML here");
  imp->add_flag("--dry-run", import_flags.dry_run, "Plan only; write nothing");
  imp->add_option("--report", import_flags.report, "Write the JSON report here");

  ExportFlags export_flags;
  auto* exp = app.add_subcommand("export-rdf", "Export all triples as RDF");
  positional(exp, "<store-path>");
  exp->add_option("--format", export_flags.format)->check(CLI::IsMember({"ntriples", "turtle"}))->capture_default_str();
  exp->add_option("--object-style", export_flags.style)->check(CLI::IsMember({"literal", "resource"}))->capture_default_str();
  exp->add_option("--out", export_flags.out, "Output file (default stdout)");
  exp->add_flag("--include-withdrawn", export_flags.include_withdrawn, "Also export triples nobody supports");

  ServeFlags serve_flags;
  auto* serve = app.add_subcommand("serve", "Run the HTTP API");
  positional(serve, "<store-path>");
  serve->add_option("--port", serve_flags.port)->check(CLI::Range(0, 65535))->capture_default_str();
  serve->add_option("--host", serve_flags.host)->capture_default_str();

  SearchFlags search_flags;
  auto* search = app.add_subcommand("search", "Find concepts by synonym");
  positional(search, "<store-path> <query>");
  search->add_option("--lang", search_flags.lang, "Language tag filter");
  search->add_option("--limit", search_flags.limit)->check(CLI::PositiveNumber)->capture_default_str();
  search->add_flag("--prefix", search_flags.prefix, "Prefix instead of exact match");

  auto* version = app.add_subcommand("version", "Print the version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*version) {
      out << "cw " << CW_VERSION << '\n';
      return kExitOk;
    }
    if (*init) return cmd_init(common, err);
    if (*imp) return cmd_import(common, import_flags, out, err);
    if (*exp) return cmd_export(common, export_flags, out, err);
    if (*search) return cmd_search(common, search_flags, out, err);
    if (*serve) return cmd_serve(common, serve_flags, err);
  } catch (const Fatal& e) {
    err << "cw: " << e.message << '\n';
  } catch (const enzyme::XmlSchemaError& e) {
    err << "cw: intermediate XML rejected: " << e.what() << '\n';
  } catch (const Error& e) {
    err << "cw: " << to_string(e.code()) << ": " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "cw: " << e.what() << '\n';
  }
  return kExitUsage;
}

}  // namespace cw::cli
