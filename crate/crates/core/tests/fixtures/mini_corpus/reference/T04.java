public class Vowels {
    private static final String VOWELS = "aeiou";

    public static int count(String text) {
        int n = 0;
        for (char c : text.toLowerCase().toCharArray()) {
            if (VOWELS.indexOf(c) >= 0) {
                n++;
            }
        }
        return n;
    }

    public static void main(String[] args) {
        System.out.println(count("Programming in Java"));
    }
}
