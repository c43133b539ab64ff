#pragma once

#include "adaptbound/io.hpp"

#include <filesystem>
#include <string>
#include <unistd.h>

namespace test {

// Scratch directory removed on scope exit.
class TempDir {
public:
    explicit TempDir(const std::string& name)
        : root_(std::filesystem::temp_directory_path() /
                ("adaptbound_" + name + "_" + std::to_string(::getpid()))) {
        std::filesystem::remove_all(root_);
        std::filesystem::create_directories(root_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(root_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::string path(const std::string& name) const { return (root_ / name).string(); }
    std::string write(const std::string& name, const std::string& content) const {
        adaptbound::io::write_file_atomic(root_ / name, content);
        return path(name);
    }

private:
    std::filesystem::path root_;
};

} // namespace test
