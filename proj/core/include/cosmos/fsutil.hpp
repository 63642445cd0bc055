#pragma once

#include <string>

namespace cosmos {

std::string read_text_file(const std::string& path);

// Write-temp-then-rename so concurrent readers never observe a torn file.
void atomic_write_text(const std::string& path, const std::string& content);

void ensure_dir(const std::string& path);

}  // namespace cosmos
