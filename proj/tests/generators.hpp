// Random-but-valid config generators covering the translator's rule-table
// input space. Shared by the unit tests and the acceptance gates.
#pragma once

#include <random>
#include <string>
#include <vector>

#include "cigrate/config.hpp"
#include "cigrate/yaml.hpp"

namespace gens {

using cigrate::YamlNode;

inline const std::vector<std::string>& command_pool() {
  static const std::vector<std::string> pool = {
      "make",          "make test",       "npm ci",
      "npm test",      "pytest -q",       "./gradlew build",
      "cargo test",    "go test ./...",   "echo done",
      "pip install -r requirements.txt",  "mvn -B verify",
      "bash scripts/ci.sh",
  };
  return pool;
}

struct LangSpec {
  const char* language;
  const char* version_key;
  std::vector<const char*> versions;
};

inline const std::vector<LangSpec>& lang_pool() {
  static const std::vector<LangSpec> pool = {
      {"java", "jdk", {"openjdk11", "openjdk17", "openjdk21"}},
      {"node_js", "node_js", {"18", "20", "22"}},
      {"python", "python", {"3.10", "3.11", "3.12"}},
      {"go", "go", {"1.21", "1.22"}},
      {"rust", "rust", {"stable", "beta"}},
  };
  return pool;
}

inline std::string pick_command(std::mt19937& gen) {
  return command_pool()[gen() % command_pool().size()];
}

inline YamlNode command_list(std::mt19937& gen, std::size_t max_len = 3) {
  YamlNode seq = YamlNode::sequence();
  std::size_t n = 1 + gen() % max_len;
  for (std::size_t i = 0; i < n; ++i)
    seq.push_back(YamlNode::str(pick_command(gen)));
  return seq;
}

inline YamlNode env_assignment_list(std::mt19937& gen) {
  YamlNode seq = YamlNode::sequence();
  std::size_t n = 1 + gen() % 3;
  for (std::size_t i = 0; i < n; ++i) {
    seq.push_back(YamlNode::str("VAR" + std::to_string(i) + "=v" +
                                std::to_string(gen() % 10)));
  }
  return seq;
}

// A Travis config with guaranteed runnable content; exercises R1-R14.
inline cigrate::RawConfig random_travis(std::mt19937& gen) {
  YamlNode root = YamlNode::mapping();
  const LangSpec* lang = nullptr;
  if (gen() % 4 != 0) {
    lang = &lang_pool()[gen() % lang_pool().size()];
    root.set("language", YamlNode::str(lang->language));
    if (gen() % 3 != 0) {
      if (gen() % 2 == 0) {
        root.set(lang->version_key,
                 YamlNode::str(lang->versions[gen() % lang->versions.size()]));
      } else {
        YamlNode versions = YamlNode::sequence();
        std::size_t n = 1 + gen() % lang->versions.size();
        for (std::size_t i = 0; i < n; ++i)
          versions.push_back(YamlNode::str(lang->versions[i]));
        root.set(lang->version_key, versions);
      }
    }
  }
  if (gen() % 3 == 0) {
    static const char* kOs[] = {"linux", "osx", "windows"};
    if (gen() % 2 == 0) {
      root.set("os", YamlNode::str(kOs[gen() % 3]));
    } else {
      YamlNode os = YamlNode::sequence();
      os.push_back(YamlNode::str("linux"));
      if (gen() % 2 == 0) os.push_back(YamlNode::str("osx"));
      root.set("os", os);
    }
  }
  if (gen() % 4 == 0) {
    static const char* kDist[] = {"xenial", "bionic", "focal", "jammy",
                                  "noble"};
    root.set("dist", YamlNode::str(kDist[gen() % 5]));
  }
  if (gen() % 3 == 0) {
    switch (gen() % 3) {
      case 0: {
        YamlNode env = YamlNode::mapping();
        env.set("global", env_assignment_list(gen));
        root.set("env", env);
        break;
      }
      case 1:
        root.set("env", env_assignment_list(gen));
        break;
      default: {
        YamlNode env = YamlNode::mapping();
        env.set("global", env_assignment_list(gen));
        env.set("matrix", env_assignment_list(gen));
        root.set("env", env);
        break;
      }
    }
  }
  if (gen() % 4 == 0) {
    YamlNode cache = YamlNode::mapping();
    YamlNode dirs = YamlNode::sequence();
    dirs.push_back(YamlNode::str(gen() % 2 ? "~/.m2" : "~/.cache/pip"));
    if (gen() % 2) dirs.push_back(YamlNode::str("node_modules"));
    cache.set("directories", dirs);
    root.set("cache", cache);
  }
  if (gen() % 4 == 0) {
    YamlNode addons = YamlNode::mapping();
    YamlNode apt = YamlNode::mapping();
    YamlNode pkgs = YamlNode::sequence();
    pkgs.push_back(YamlNode::str("libssl-dev"));
    if (gen() % 2) pkgs.push_back(YamlNode::str("graphviz"));
    apt.set("packages", pkgs);
    addons.set("apt", apt);
    root.set("addons", addons);
  }
  if (gen() % 5 == 0) {
    YamlNode services = YamlNode::sequence();
    services.push_back(YamlNode::str(gen() % 2 ? "docker" : "postgresql"));
    root.set("services", services);
  }
  if (gen() % 6 == 0) root.set("sudo", YamlNode::str("required"));
  if (gen() % 4 == 0) root.set("before_install", command_list(gen, 2));
  if (gen() % 3 == 0) root.set("install", command_list(gen, 2));
  if (gen() % 4 == 0) root.set("before_script", command_list(gen, 2));

  const bool stage_mode = gen() % 6 == 0;
  if (!stage_mode) {
    root.set("script", command_list(gen));
    if (gen() % 4 == 0) root.set("after_success", command_list(gen, 1));
    if (gen() % 4 == 0) root.set("after_failure", command_list(gen, 1));
    if (gen() % 4 == 0) root.set("after_script", command_list(gen, 1));
    if (lang && gen() % 4 == 0) {
      YamlNode matrix = YamlNode::mapping();
      YamlNode include = YamlNode::sequence();
      YamlNode row = YamlNode::mapping();
      row.set(lang->version_key, YamlNode::str(lang->versions[0]));
      row.set("env", YamlNode::str("EXTRA=1"));
      include.push_back(row);
      matrix.set("include", include);
      if (gen() % 2) {
        YamlNode allow = YamlNode::sequence();
        YamlNode arow = YamlNode::mapping();
        arow.set(lang->version_key, YamlNode::str(lang->versions[0]));
        allow.push_back(arow);
        matrix.set("allow_failures", allow);
      }
      root.set(gen() % 2 ? "matrix" : "jobs", matrix);
    }
  } else {
    YamlNode jobs = YamlNode::mapping();
    YamlNode include = YamlNode::sequence();
    std::size_t n_jobs = 1 + gen() % 3;
    std::vector<std::string> stages;
    if (gen() % 2 == 0) stages = {"prepare", "test"};
    for (std::size_t i = 0; i < n_jobs; ++i) {
      YamlNode job = YamlNode::mapping();
      if (!stages.empty())
        job.set("stage", YamlNode::str(stages[i % stages.size()]));
      if (gen() % 2 == 0)
        job.set("name", YamlNode::str("job " + std::to_string(i)));
      job.set("script", command_list(gen, 2));
      if (gen() % 3 == 0) job.set("env", YamlNode::str("JOB=" +
                                                        std::to_string(i)));
      include.push_back(job);
    }
    jobs.set("include", include);
    root.set("jobs", jobs);
    if (!stages.empty()) {
      YamlNode stage_list = YamlNode::sequence();
      for (const std::string& s : stages)
        stage_list.push_back(YamlNode::str(s));
      root.set("stages", stage_list);
    }
  }
  if (gen() % 4 == 0) {
    YamlNode branches = YamlNode::mapping();
    YamlNode only = YamlNode::sequence();
    only.push_back(YamlNode::str("main"));
    if (gen() % 2) only.push_back(YamlNode::str("develop"));
    branches.set(gen() % 3 ? "only" : "except", only);
    root.set("branches", branches);
  }
  if (gen() % 5 == 0) {
    YamlNode deploy = YamlNode::mapping();
    deploy.set("provider", YamlNode::str("script"));
    deploy.set("script", YamlNode::str("deploy.sh"));
    root.set("deploy", deploy);
  }
  if (gen() % 5 == 0) {
    YamlNode notif = YamlNode::mapping();
    notif.set("email", YamlNode::boolean(false));
    root.set("notifications", notif);
  }
  return cigrate::RawConfig{cigrate::CiDialect::TravisCI, "", root, 0};
}

// A GHA workflow with at least one runnable step per job; exercises G1-G10.
inline cigrate::RawConfig random_gha(std::mt19937& gen) {
  YamlNode root = YamlNode::mapping();
  if (gen() % 3 == 0) root.set("name", YamlNode::str("CI"));
  switch (gen() % 3) {
    case 0:
      root.set("on", YamlNode::str("push"));
      break;
    case 1: {
      YamlNode on = YamlNode::sequence();
      on.push_back(YamlNode::str("push"));
      on.push_back(YamlNode::str("pull_request"));
      root.set("on", on);
      break;
    }
    default: {
      YamlNode push = YamlNode::mapping();
      YamlNode branches = YamlNode::sequence();
      branches.push_back(YamlNode::str("main"));
      push.set(gen() % 2 ? "branches" : "branches-ignore", branches);
      YamlNode on = YamlNode::mapping();
      on.set("push", push);
      root.set("on", on);
      break;
    }
  }
  if (gen() % 4 == 0) {
    YamlNode env = YamlNode::mapping();
    env.set("CI_FLAG", YamlNode::str("1"));
    root.set("env", env);
  }

  YamlNode jobs = YamlNode::mapping();
  std::size_t n_jobs = 1 + gen() % 3;
  std::vector<std::string> ids;
  for (std::size_t j = 0; j < n_jobs; ++j) {
    std::string id = "job" + std::to_string(j);
    YamlNode job = YamlNode::mapping();
    bool has_os_dim = false;
    if (gen() % 4 == 0) {
      YamlNode strategy = YamlNode::mapping();
      YamlNode matrix = YamlNode::mapping();
      if (gen() % 2 == 0) {
        YamlNode os = YamlNode::sequence();
        os.push_back(YamlNode::str("ubuntu-latest"));
        os.push_back(YamlNode::str("macos-latest"));
        matrix.set("os", os);
        has_os_dim = true;
      }
      YamlNode vers = YamlNode::sequence();
      vers.push_back(YamlNode::str("3.11"));
      vers.push_back(YamlNode::str("3.12"));
      matrix.set("python", vers);
      strategy.set("matrix", matrix);
      job.set("strategy", strategy);
    }
    static const char* kRunners[] = {"ubuntu-latest", "ubuntu-22.04",
                                     "macos-latest", "windows-latest"};
    job.set("runs-on", has_os_dim ? YamlNode::str("${{ matrix.os }}")
                                  : YamlNode::str(kRunners[gen() % 4]));
    if (!ids.empty() && gen() % 3 == 0) {
      YamlNode needs = YamlNode::sequence();
      needs.push_back(YamlNode::str(ids.back()));
      job.set("needs", needs);
    }
    if (gen() % 5 == 0) job.set("continue-on-error", YamlNode::boolean(true));
    if (gen() % 4 == 0) {
      YamlNode env = YamlNode::mapping();
      env.set("JOB_VAR", YamlNode::str("x"));
      job.set("env", env);
    }

    YamlNode steps = YamlNode::sequence();
    {
      YamlNode checkout = YamlNode::mapping();
      checkout.set("uses", YamlNode::str("actions/checkout@v4"));
      steps.push_back(checkout);
    }
    if (gen() % 3 == 0) {
      YamlNode setup = YamlNode::mapping();
      setup.set("uses", YamlNode::str("actions/setup-python@v5"));
      YamlNode with = YamlNode::mapping();
      with.set("python-version", YamlNode::str("3.12"));
      setup.set("with", with);
      steps.push_back(setup);
    }
    if (gen() % 4 == 0) {
      YamlNode cache = YamlNode::mapping();
      cache.set("uses", YamlNode::str("actions/cache@v4"));
      YamlNode with = YamlNode::mapping();
      with.set("path", YamlNode::str("~/.cache/pip"));
      with.set("key", YamlNode::str("cache-" + id));
      cache.set("with", with);
      steps.push_back(cache);
    }
    std::size_t n_runs = 1 + gen() % 3;
    for (std::size_t s = 0; s < n_runs; ++s) {
      YamlNode run = YamlNode::mapping();
      run.set("run", YamlNode::str(pick_command(gen)));
      steps.push_back(run);
    }
    if (gen() % 4 == 0) {
      YamlNode cond = YamlNode::mapping();
      static const char* kIf[] = {"success()", "failure()", "always()"};
      cond.set("if", YamlNode::str(kIf[gen() % 3]));
      cond.set("run", YamlNode::str(pick_command(gen)));
      steps.push_back(cond);
    }
    if (gen() % 5 == 0) {
      YamlNode custom = YamlNode::mapping();
      custom.set("uses", YamlNode::str("someorg/custom-action@v1"));
      YamlNode with = YamlNode::mapping();
      with.set("arg", YamlNode::str("1"));
      custom.set("with", with);
      steps.push_back(custom);
    }
    job.set("steps", steps);
    jobs.set(id, job);
    ids.push_back(id);
  }
  root.set("jobs", jobs);
  return cigrate::RawConfig{cigrate::CiDialect::GitHubActions, "", root, 0};
}

}  // namespace gens
