public static boolean isSimpleNumber(String s) {
    if (s == null || s.isEmpty()) {
        return false;
    }
    if (s.length() == 1 && s.charAt(0) == '0') {
        return false;
    }
    for (int i = 0; i < s.length(); i++) {
        char c = s.charAt(i);
        if (c < '0' || c > '9') {
            return false;
        }
    }
    return true;
}
